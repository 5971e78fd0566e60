#pragma once

// Real Bessel functions J_n, Y_n and the Hankel function H^(1)_n = J_n + i Y_n
// for real positive arguments.
//
// Orders 0 and 1 use piecewise minimax rational approximations split at x = 8.
// Below the split the Boost.Math rationals are evaluated directly; above it
// all four functions share one Hankel-asymptotic rational pair per order (the
// Hart / Boost coefficients) and a single sin/cos evaluation, which is what
// makes the kernel evaluations in the Nystrom assembly affordable.
//
// General integer orders come from three-term recurrences: upward for Y (and
// for J while the order stays below the argument), Miller's normalized
// downward recurrence for J otherwise.

#include <boost/math/special_functions/detail/bessel_j0.hpp>
#include <boost/math/special_functions/detail/bessel_j1.hpp>
#include <boost/math/special_functions/detail/bessel_y0.hpp>
#include <boost/math/special_functions/detail/bessel_y1.hpp>
#include <boost/math/tools/rational.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace rfscat::specfun {

inline constexpr int kMaxOrder = 60;

struct Bessel01 {
  double j0, j1, y0, y1;
};

namespace detail {

using boost_policy = boost::math::policies::policy<
    boost::math::policies::promote_double<false>>;

// P and Q of the Hankel asymptotic form, as rationals in (8/x)^2.
inline constexpr double kPC0[] = {
    2.2779090197304684302e+04, 4.1345386639580765797e+04,
    2.1170523380864944322e+04, 3.4806486443249270347e+03,
    1.5376201909008354296e+02, 8.8961548424210455236e-01};
inline constexpr double kQC0[] = {
    2.2779090197304684318e+04, 4.1370412495510416640e+04,
    2.1215350561880115730e+04, 3.5028735138235608207e+03,
    1.5711159858080893649e+02, 1.0};
inline constexpr double kPS0[] = {
    -8.9226600200800094098e+01, -1.8591953644342993800e+02,
    -1.1183429920482737611e+02, -2.2300261666214198472e+01,
    -1.2441026745835638459e+00, -8.8033303048680751817e-03};
inline constexpr double kQS0[] = {
    5.7105024128512061905e+03, 1.1951131543434613647e+04,
    7.2642780169211018836e+03, 1.4887231232283756582e+03,
    9.0593769594993125859e+01, 1.0};
inline constexpr double kPC1[] = {
    -4.4357578167941278571e+06, -9.9422465050776411957e+06,
    -6.6033732483649391093e+06, -1.5235293511811373833e+06,
    -1.0982405543459346727e+05, -1.6116166443246101165e+03, 0.0};
inline constexpr double kQC1[] = {
    -4.4357578167941278568e+06, -9.9341243899345856590e+06,
    -6.5853394797230870728e+06, -1.5118095066341608816e+06,
    -1.0726385991103820119e+05, -1.4550094401904961825e+03, 1.0};
inline constexpr double kPS1[] = {
    3.3220913409857223519e+04, 8.5145160675335701966e+04,
    6.6178836581270835179e+04, 1.8494262873223866797e+04,
    1.7063754290207680021e+03, 3.5265133846636032186e+01, 0.0};
inline constexpr double kQS1[] = {
    7.0871281941028743574e+05, 1.8194580422439972989e+06,
    1.4194606696037208929e+06, 4.0029443582266975117e+05,
    3.7890229745772202641e+04, 8.6383677696049909675e+02, 1.0};

inline Bessel01 asymptotic01(double x) {
  using boost::math::tools::evaluate_rational;
  const double y = 8.0 / x;
  const double y2 = y * y;
  const double rc0 = evaluate_rational(kPC0, kQC0, y2);
  const double rs0 = evaluate_rational(kPS0, kQS0, y2);
  const double rc1 = evaluate_rational(kPC1, kQC1, y2);
  const double rs1 = evaluate_rational(kPS1, kQS1, y2);
  const double factor = 1.0 / std::sqrt(kPi * x);
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  // sin/cos of x - pi/4 and x - 3pi/4 expanded; the 1/sqrt(2) is in factor.
  return {factor * (rc0 * (cx + sx) - y * rs0 * (sx - cx)),
          factor * (rc1 * (sx - cx) + y * rs1 * (sx + cx)),
          factor * (rc0 * (sx - cx) + y * rs0 * (cx + sx)),
          factor * (y * rs1 * (sx - cx) - rc1 * (sx + cx))};
}

inline void require_finite(double x, const char *fn) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": non-finite argument");
  }
}

inline void require_order01(int order, const char *fn) {
  if (order != 0 && order != 1) {
    throw UnsupportedOrderError(std::string(fn) + ": order must be 0 or 1");
  }
}

inline void require_order(int order, const char *fn) {
  if (order < 0 || order > kMaxOrder) {
    throw UnsupportedOrderError(std::string(fn) + ": order " +
                                std::to_string(order) +
                                " outside [0, " + std::to_string(kMaxOrder) +
                                "]");
  }
}

}  // namespace detail

/// J0, J1, Y0, Y1 at x > 0 in one call.
inline Bessel01 bessel01(double x) {
  detail::require_finite(x, "bessel01");
  if (x <= 0.0) throw DomainError("bessel01: argument must be positive");
  if (x > 8.0) return detail::asymptotic01(x);
  namespace bd = boost::math::detail;
  return {bd::bessel_j0(x), bd::bessel_j1(x),
          bd::bessel_y0(x, detail::boost_policy()),
          bd::bessel_y1(x, detail::boost_policy())};
}

/// J_order(x) for order 0 or 1 and x >= 0.
inline double bessel_j(int order, double x) {
  detail::require_order01(order, "bessel_j");
  detail::require_finite(x, "bessel_j");
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x > 8.0) {
    const Bessel01 b = detail::asymptotic01(x);
    return order == 0 ? b.j0 : b.j1;
  }
  return order == 0 ? boost::math::detail::bessel_j0(x)
                    : boost::math::detail::bessel_j1(x);
}

/// Y_order(x) for order 0 or 1 and x > 0.
inline double bessel_y(int order, double x) {
  detail::require_order01(order, "bessel_y");
  detail::require_finite(x, "bessel_y");
  if (x <= 0.0) throw DomainError("bessel_y: argument must be positive");
  if (x > 8.0) {
    const Bessel01 b = detail::asymptotic01(x);
    return order == 0 ? b.y0 : b.y1;
  }
  return order == 0
             ? boost::math::detail::bessel_y0(x, detail::boost_policy())
             : boost::math::detail::bessel_y1(x, detail::boost_policy());
}

inline Complex hankel1(int order, double x) {
  return {bessel_j(order, x), bessel_y(order, x)};
}

/// H0^(1)(x) and H1^(1)(x) together.
struct Hankel01 {
  Complex h0, h1;
};

inline Hankel01 hankel01(double x) {
  const Bessel01 b = bessel01(x);
  return {{b.j0, b.y0}, {b.j1, b.y1}};
}

/// J_0(x), ..., J_max_order(x).
inline std::vector<double> bessel_jn_all(int max_order, double x) {
  detail::require_order(max_order, "bessel_jn_all");
  detail::require_finite(x, "bessel_jn_all");
  if (x < 0.0) throw DomainError("bessel_jn_all: negative argument");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const Bessel01 b = bessel01(x);
  out[0] = b.j0;
  if (max_order == 0) return out;
  out[1] = b.j1;
  // Upward recurrence is stable while m < x.
  int m = 1;
  for (; m + 1 <= max_order && m + 1 < x; ++m) {
    out[m + 1] = (2.0 * m / x) * out[m] - out[m - 1];
  }
  if (m == max_order) return out;

  // Miller: run downward from well above max_order, normalize against J0/J1.
  const int start =
      2 * ((max_order + 20 + static_cast<int>(std::sqrt(40.0 * max_order))) / 2);
  std::vector<double> trial(static_cast<std::size_t>(start) + 2, 0.0);
  trial[start + 1] = 0.0;
  trial[start] = 1e-300;
  for (int k = start; k >= 1; --k) {
    trial[k - 1] = (2.0 * k / x) * trial[k] - trial[k + 1];
    if (std::abs(trial[k - 1]) > 1e250) {
      for (int q = k - 1; q <= start + 1; ++q) trial[q] *= 1e-250;
    }
  }
  const double scale = std::abs(b.j0) >= std::abs(b.j1) ? b.j0 / trial[0]
                                                        : b.j1 / trial[1];
  for (int k = m + 1; k <= max_order; ++k) out[k] = trial[k] * scale;
  return out;
}

/// Y_0(x), ..., Y_max_order(x) by upward recurrence.
inline std::vector<double> bessel_yn_all(int max_order, double x) {
  detail::require_order(max_order, "bessel_yn_all");
  detail::require_finite(x, "bessel_yn_all");
  if (x <= 0.0) throw DomainError("bessel_yn_all: argument must be positive");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  const Bessel01 b = bessel01(x);
  out[0] = b.y0;
  if (max_order >= 1) out[1] = b.y1;
  for (int m = 1; m < max_order; ++m) {
    out[m + 1] = (2.0 * m / x) * out[m] - out[m - 1];
  }
  return out;
}

inline double bessel_jn(int order, double x) {
  return bessel_jn_all(order, x)[static_cast<std::size_t>(order)];
}

inline double bessel_yn(int order, double x) {
  return bessel_yn_all(order, x)[static_cast<std::size_t>(order)];
}

}  // namespace rfscat::specfun
