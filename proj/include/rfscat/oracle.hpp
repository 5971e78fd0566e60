#pragma once

// Independent references: the separation-of-variables solution for plane-wave
// scattering by a sound-soft disc, and the O(n^2) evaluation of the field
// correlation from the full Cauchy-data correlation matrix. Only the special
// functions are shared with the solver.

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"
#include "types.hpp"

namespace rfscat::oracle {

struct MieSolution {
  double radius;
  double kappa;
  Point2 direction;
  int order;
  /// J_m(kappa a) / H_m(kappa a), m = 0 .. order.
  std::vector<Complex> ratio;
  /// 1 / H_m(kappa a).
  std::vector<Complex> inverse_hankel;
};

/// Chooses the truncation order so that |J_M / H_M| < 1e-17 with a margin of
/// five further terms, unless an explicit order is given.
inline MieSolution make_mie(double radius, double kappa, Point2 direction,
                            int explicit_order = -1) {
  if (!(radius > 0.0 && kappa > 0.0)) {
    throw DomainError("make_mie: radius and wavenumber must be positive");
  }
  const double ka = kappa * radius;
  const auto j = specfun::bessel_jn_all(specfun::kMaxOrder, ka);
  const auto y = specfun::bessel_yn_all(specfun::kMaxOrder, ka);
  int order = explicit_order;
  for (int m = 0; order < 0 && m <= specfun::kMaxOrder; ++m) {
    if (m >= ka && std::abs(j[m] / Complex(j[m], y[m])) < 1e-17) {
      order = m + 5;
      break;
    }
  }
  if (order < 0 || order > specfun::kMaxOrder) {
    throw UnsupportedOrderError("make_mie: series needs more than " +
                                std::to_string(specfun::kMaxOrder) + " terms");
  }
  MieSolution s{radius, kappa, direction.normalized(), order, {}, {}};
  for (int m = 0; m <= order; ++m) {
    const Complex h(j[m], y[m]);
    s.ratio.push_back(j[m] / h);
    s.inverse_hankel.push_back(1.0 / h);
  }
  return s;
}

namespace detail {

inline double relative_angle(const MieSolution &s, const Point2 &x) {
  return std::atan2(x.y(), x.x()) - std::atan2(s.direction.y(), s.direction.x());
}

inline Complex ipow(int m) {
  static constexpr Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[m % 4];
}

}  // namespace detail

/// u_s(x) = -sum_m i^|m| (J_|m|/H_|m|)(kappa a) H_|m|(kappa |x|) e^{i m (theta - theta_d)}.
inline Complex mie_scattered(const MieSolution &s, const Point2 &x) {
  const double r = x.norm();
  if (r < s.radius * (1.0 - 1e-12)) {
    throw DomainError("mie_scattered: point inside the disc");
  }
  const double kr = s.kappa * r;
  const auto j = specfun::bessel_jn_all(s.order, kr);
  const auto y = specfun::bessel_yn_all(s.order, kr);
  const double dt = detail::relative_angle(s, x);
  Complex sum = s.ratio[0] * Complex(j[0], y[0]);
  for (int m = 1; m <= s.order; ++m) {
    sum += 2.0 * detail::ipow(m) * s.ratio[m] * Complex(j[m], y[m]) *
           std::cos(m * dt);
  }
  return -sum;
}

/// Far-field pattern normalized as u_s ~ e^{i kappa r} / sqrt(r) u_inf.
inline Complex mie_farfield(const MieSolution &s, const Point2 &xh) {
  const double dt = detail::relative_angle(s, xh);
  Complex sum = s.ratio[0];
  for (int m = 1; m <= s.order; ++m) sum += 2.0 * s.ratio[m] * std::cos(m * dt);
  return -std::sqrt(2.0 / (kPi * s.kappa)) * std::polar(1.0, -0.25 * kPi) * sum;
}

/// du/dr of the total field on the disc boundary at polar angle phi, using
/// J_m' H_m - J_m H_m' = -2i / (pi kappa a).
inline Complex mie_neumann(const MieSolution &s, double phi) {
  const double dt = phi - std::atan2(s.direction.y(), s.direction.x());
  Complex sum = s.inverse_hankel[0];
  for (int m = 1; m <= s.order; ++m) {
    sum += 2.0 * detail::ipow(m) * s.inverse_hankel[m] * std::cos(m * dt);
  }
  return -2.0 * kI / (kPi * s.radius) * sum;
}

/// Cor[u_s](x,x) by the full double trapezoidal sum over the circle of radius
/// R with n nodes, from the 2n x 2n correlation matrix of [u_s; du_s/dn].
inline double full_correlation_at(const ComplexMatrix &C, double R, int n,
                                  double kappa, const Point2 &x) {
  if (C.rows() != 2 * n || C.cols() != 2 * n) {
    throw DimensionError("full_correlation_at: matrix must be 2n x 2n");
  }
  if (!(x.norm() > R)) throw DomainError("full_correlation_at: point inside the interface");
  const double w = kTwoPi * R / n;
  // a_j multiplies u_s(z_j), b_j multiplies du_s/dn(z_j).
  std::vector<Complex> a(n), b(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const Point2 nz(std::cos(t), std::sin(t));
    const Point2 z = R * nz;
    const Point2 d = z - x;
    const double r = d.norm();
    const Complex h0 = specfun::hankel1(0, kappa * r);
    const Complex h1 = specfun::hankel1(1, kappa * r);
    a[j] = w * (-0.25 * kI * kappa * h1 * nz.dot(d) / r);
    b[j] = -w * 0.25 * kI * h0;
  }
  Complex sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      sum += a[j] * std::conj(a[k]) * C(j, k) +
             a[j] * std::conj(b[k]) * C(j, n + k) +
             b[j] * std::conj(a[k]) * C(n + j, k) +
             b[j] * std::conj(b[k]) * C(n + j, n + k);
    }
  }
  return sum.real();
}

}  // namespace rfscat::oracle
