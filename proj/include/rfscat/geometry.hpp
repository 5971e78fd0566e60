#pragma once

// Closed parametrized boundary curves: the nominal kite, the kite with a
// random radial Fourier perturbation, and circles. All curves are 2pi-periodic
// and counter-clockwise, so the outward normal is the tangent rotated by -90
// degrees.

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace rfscat {

struct KiteNominal {};

/// Point, first and second derivative of a curve at one parameter value.
struct CurveJet {
  Point2 point;
  Point2 d1;
  Point2 d2;
};

/// 5 cos(phi) - 3.25 cos(2 phi), 7.5 sin(phi).
inline Point2 kite_point(double phi) {
  return {5.0 * std::cos(phi) - 3.25 * std::cos(2.0 * phi),
          7.5 * std::sin(phi)};
}

inline Point2 kite_tangent(double phi) {
  return {-5.0 * std::sin(phi) + 6.5 * std::sin(2.0 * phi),
          7.5 * std::cos(phi)};
}

inline Point2 kite_second_derivative(double phi) {
  return {-5.0 * std::cos(phi) + 13.0 * std::cos(2.0 * phi),
          -7.5 * std::sin(phi)};
}

inline CurveJet kite_jet(double phi) {
  return {kite_point(phi), kite_tangent(phi), kite_second_derivative(phi)};
}

/// Radius fluctuation r(phi, y) = sum_k a_{2k-1} y_{2k-1} sin(k phi)
///                                     + a_{2k} y_{2k} cos(k phi).
/// Coefficients are stored zero-based: coefficient(2k-2) is a_{2k-1}.
class RadialPerturbation {
 public:
  RadialPerturbation() = default;
  explicit RadialPerturbation(RealVector coefficients)
      : a_(std::move(coefficients)) {
    if (a_.size() % 2 != 0) {
      throw DimensionError("RadialPerturbation: coefficient count must be even");
    }
  }

  /// a_{2k-1} = a_{2k} = amplitude / k^3 for k = 1 .. dimension / 2.
  static RadialPerturbation cubic_decay(int dimension, double amplitude = 1.0) {
    if (dimension < 2 || dimension % 2 != 0) {
      throw DimensionError("RadialPerturbation: dimension must be even and >= 2");
    }
    RealVector a(dimension);
    for (int k = 1; k <= dimension / 2; ++k) {
      const double c = amplitude / (double(k) * k * k);
      a(2 * k - 2) = c;
      a(2 * k - 1) = c;
    }
    return RadialPerturbation(std::move(a));
  }

  int dimension() const { return static_cast<int>(a_.size()); }
  int modes() const { return dimension() / 2; }
  const RealVector &coefficients() const { return a_; }

  /// Upper bound of |r| over all phi and all y in [-1,1]^P.
  double max_amplitude() const { return a_.cwiseAbs().sum(); }

 private:
  RealVector a_;
};

struct RadiusJet {
  double r, dr, d2r;
};

inline void check_parameter_length(const RadialPerturbation &p,
                                   const RealVector &y) {
  if (y.size() != p.dimension()) {
    throw DimensionError("radius: parameter vector has length " +
                         std::to_string(y.size()) + ", expected " +
                         std::to_string(p.dimension()));
  }
}

/// r and its first two phi-derivatives by termwise differentiation.
inline RadiusJet radius_jet(const RadialPerturbation &p, double phi,
                            const RealVector &y) {
  check_parameter_length(p, y);
  const RealVector &a = p.coefficients();
  const Complex step = std::polar(1.0, phi);
  Complex rot = step;  // e^{i k phi}
  RadiusJet out{0.0, 0.0, 0.0};
  for (int k = 1; k <= p.modes(); ++k) {
    const double s = rot.imag();
    const double c = rot.real();
    const double bs = a(2 * k - 2) * y(2 * k - 2);
    const double bc = a(2 * k - 1) * y(2 * k - 1);
    out.r += bs * s + bc * c;
    out.dr += k * (bs * c - bc * s);
    out.d2r -= double(k) * k * (bs * s + bc * c);
    rot *= step;
  }
  return out;
}

inline double radius(const RadialPerturbation &p, double phi,
                     const RealVector &y) {
  return radius_jet(p, phi, y).r;
}

/// Nominal kite plus r(phi, y) (cos phi, sin phi).
struct PerturbedKite {
  RadialPerturbation perturbation;
  RealVector y;
};

struct Circle {
  double radius = 1.0;
};

using CurveSpec = std::variant<KiteNominal, PerturbedKite, Circle>;

namespace detail {

inline CurveJet perturbed_kite_jet(const PerturbedKite &c, double phi) {
  const CurveJet k = kite_jet(phi);
  const RadiusJet r = radius_jet(c.perturbation, phi, c.y);
  const Point2 er(std::cos(phi), std::sin(phi));
  const Point2 et(-std::sin(phi), std::cos(phi));
  return {k.point + r.r * er, k.d1 + r.dr * er + r.r * et,
          k.d2 + (r.d2r - r.r) * er + 2.0 * r.dr * et};
}

inline CurveJet circle_jet(const Circle &c, double phi) {
  const Point2 er(std::cos(phi), std::sin(phi));
  const Point2 et(-std::sin(phi), std::cos(phi));
  return {c.radius * er, c.radius * et, -c.radius * er};
}

inline double cross(const Point2 &a, const Point2 &b) {
  return a.x() * b.y() - a.y() * b.x();
}

inline bool segments_intersect(const Point2 &p1, const Point2 &p2,
                               const Point2 &q1, const Point2 &q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 &&
         d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace detail

inline CurveJet curve_jet(const CurveSpec &spec, double phi) {
  return std::visit(
      [phi](const auto &c) -> CurveJet {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KiteNominal>) {
          return kite_jet(phi);
        } else if constexpr (std::is_same_v<T, PerturbedKite>) {
          return detail::perturbed_kite_jet(c, phi);
        } else {
          return detail::circle_jet(c, phi);
        }
      },
      spec);
}

/// Boundary sampled at phi_i = 2 pi i / n, i = 0 .. n-1. Columns of the 2xn
/// matrices hold per-node vectors.
struct BoundaryRealization {
  int n = 0;
  Eigen::Matrix2Xd nodes;
  Eigen::Matrix2Xd tangents;  // d gamma / d phi
  Eigen::Matrix2Xd second;    // d^2 gamma / d phi^2
  Eigen::Matrix2Xd normals;   // outward unit normals
  RealVector jacobians;       // |d gamma / d phi|

  double parameter(int i) const { return kTwoPi * i / n; }

  /// max_i |node_i|.
  double max_radius() const { return nodes.colwise().norm().maxCoeff(); }

  /// Shoelace area of the node polygon; positive for counter-clockwise.
  double signed_area() const {
    double a = 0.0;
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      a += detail::cross(nodes.col(i), nodes.col(j));
    }
    return 0.5 * a;
  }

  /// True if no two non-adjacent polygon edges cross.
  bool is_simple() const {
    for (int i = 0; i < n; ++i) {
      const Point2 p1 = nodes.col(i);
      const Point2 p2 = nodes.col((i + 1) % n);
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (detail::segments_intersect(p1, p2, nodes.col(j),
                                       nodes.col((j + 1) % n))) {
          return false;
        }
      }
    }
    return true;
  }
};

inline constexpr double kMinJacobian = 1e-10;

/// Sample a curve at n equidistant parameter values and validate it.
inline BoundaryRealization realize_boundary(const CurveSpec &spec, int n) {
  if (n < 16 || n % 2 != 0) {
    throw DomainError("realize_boundary: node count must be even and >= 16, got " +
                      std::to_string(n));
  }
  BoundaryRealization b;
  b.n = n;
  b.nodes.resize(2, n);
  b.tangents.resize(2, n);
  b.second.resize(2, n);
  b.normals.resize(2, n);
  b.jacobians.resize(n);
  for (int i = 0; i < n; ++i) {
    const CurveJet jet = curve_jet(spec, b.parameter(i));
    const double jac = jet.d1.norm();
    if (!(jac > kMinJacobian)) {
      throw GeometryError("realize_boundary: degenerate jacobian at node " +
                          std::to_string(i));
    }
    b.nodes.col(i) = jet.point;
    b.tangents.col(i) = jet.d1;
    b.second.col(i) = jet.d2;
    b.jacobians(i) = jac;
    b.normals.col(i) = Point2(jet.d1.y(), -jet.d1.x()) / jac;
  }
  if (!(b.signed_area() > 0.0)) {
    throw GeometryError("realize_boundary: curve is not counter-clockwise");
  }
  if (!b.is_simple()) {
    throw GeometryError("realize_boundary: curve is self-intersecting");
  }
  return b;
}

}  // namespace rfscat
