#pragma once

// Layer-potential evaluation of the scattered field.
//
// With outward normals and psi = du/dn of the total field on Gamma, Green's
// representation gives
//
//   u_s(x)    = - int_Gamma Phi(x,z) psi(z) ds_z,
//   u_inf(xh) = - int_Gamma Phi_inf(xh,z) psi(z) ds_z,
//
// and on the circle Sigma of radius R enclosing Gamma
//
//   u_s(x) = int_Sigma { u_s(z) dPhi(x,z)/dn_z - du_s/dn(z) Phi(x,z) } ds_z
//
// for |x| > R, with the analogous far-field formula. The signs are fixed by
// agreement with the Mie series and between the two representations.

#include <cmath>
#include <string>

#include "bem.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "specfun.hpp"
#include "types.hpp"

namespace rfscat {

/// Circle of radius R with n equidistant nodes z_j = R (cos 2 pi j/n, sin 2 pi j/n).
class ArtificialInterface {
 public:
  ArtificialInterface(double radius, int nodes) : radius_(radius), n_(nodes) {
    if (!(std::isfinite(radius) && radius > 0.0)) {
      throw DomainError("ArtificialInterface: radius must be positive");
    }
    if (nodes < 4) throw DomainError("ArtificialInterface: too few nodes");
  }

  double radius() const { return radius_; }
  int size() const { return n_; }
  Point2 normal(int j) const {
    const double t = kTwoPi * j / n_;
    return {std::cos(t), std::sin(t)};
  }
  Point2 node(int j) const { return radius_ * normal(j); }
  /// Trapezoidal weight 2 pi R / n.
  double weight() const { return kTwoPi * radius_ / n_; }

  /// Evaluation points closer than this to Sigma are refused.
  double clearance(double kappa) const { return 0.1 * kTwoPi / kappa; }

 private:
  double radius_;
  int n_;
};

/// Trace and normal derivative of u_s at the Sigma nodes.
struct CauchyData {
  ArtificialInterface interface;
  double kappa;
  ComplexVector u;
  ComplexVector dn_u;

  /// [u; du/dn], length 2n.
  ComplexVector stacked() const {
    ComplexVector v(2 * u.size());
    v << u, dn_u;
    return v;
  }

  static CauchyData from_stacked(const ArtificialInterface &s, double kappa,
                                 const ComplexVector &v) {
    const int n = s.size();
    if (v.size() != 2 * n) {
      throw DimensionError("CauchyData: stacked vector length mismatch");
    }
    return {s, kappa, v.head(n), v.tail(n)};
  }
};

namespace kernel {

/// Phi(x,z) = (i/4) H0(kappa |x-z|).
inline Complex fundamental(double kappa, const Point2 &x, const Point2 &z) {
  const double r = (x - z).norm();
  return 0.25 * kI * specfun::hankel1(0, kappa * r);
}

/// Phi and grad_x Phi = -(i kappa / 4) H1(kappa r) (x - z) / r.
struct KernelJet {
  Complex value;
  Complex grad_x, grad_y;
};

inline KernelJet fundamental_jet(double kappa, const Point2 &x,
                                 const Point2 &z) {
  const Point2 d = x - z;
  const double r = d.norm();
  const specfun::Hankel01 h = specfun::hankel01(kappa * r);
  const Complex g = -0.25 * kI * kappa * h.h1 / r;
  return {0.25 * kI * h.h0, g * d.x(), g * d.y()};
}

inline Complex farfield_factor(double kappa) {
  return std::polar(1.0 / std::sqrt(8.0 * kPi * kappa), 0.25 * kPi);
}

/// Phi_inf(xh,z) = e^{i pi/4} / sqrt(8 pi kappa) e^{-i kappa <xh,z>}.
inline Complex farfield(double kappa, const Point2 &xh, const Point2 &z) {
  return farfield_factor(kappa) * std::polar(1.0, -kappa * xh.dot(z));
}

}  // namespace kernel

inline void require_unit_direction(const Point2 &xh, const char *fn) {
  if (!(std::abs(xh.norm() - 1.0) <= 1e-12)) {
    throw DomainError(std::string(fn) + ": direction must have unit length");
  }
}

/// Winding-number test against the node polygon.
inline bool inside_boundary(const BoundaryRealization &b, const Point2 &x) {
  bool inside = false;
  for (int i = 0, j = b.n - 1; i < b.n; j = i++) {
    const Point2 pi = b.nodes.col(i);
    const Point2 pj = b.nodes.col(j);
    if ((pi.y() > x.y()) != (pj.y() > x.y()) &&
        x.x() < (pj.x() - pi.x()) * (x.y() - pi.y()) / (pj.y() - pi.y()) + pi.x()) {
      inside = !inside;
    }
  }
  return inside;
}

inline constexpr double kNearNodeDistance = 1e-6;

inline Complex eval_scattered_from_gamma(const NeumannDensity &density,
                                         const Point2 &x) {
  const BoundaryRealization &b = density.boundary;
  const double dmin = (b.nodes.colwise() - x).colwise().norm().minCoeff();
  if (dmin < kNearNodeDistance) {
    throw DomainError("eval_scattered_from_gamma: point within 1e-6 of a boundary node");
  }
  if (inside_boundary(b, x)) {
    throw DomainError("eval_scattered_from_gamma: point inside the scatterer");
  }
  const ComplexVector q = density.weighted();
  Complex u = 0.0;
  for (int j = 0; j < b.n; ++j) {
    u -= kernel::fundamental(density.kappa, x, b.nodes.col(j)) * q(j);
  }
  return u;
}

inline CauchyData cauchy_on_sigma(const NeumannDensity &density,
                                  const ArtificialInterface &sigma) {
  const BoundaryRealization &b = density.boundary;
  if (!(b.max_radius() < sigma.radius())) {
    throw ContainmentError("cauchy_on_sigma: boundary reaches radius " +
                           std::to_string(b.max_radius()) +
                           " >= interface radius " +
                           std::to_string(sigma.radius()));
  }
  const double kappa = density.kappa;
  const ComplexVector q = density.weighted();
  const int n = sigma.size();
  CauchyData c{sigma, kappa, ComplexVector::Zero(n), ComplexVector::Zero(n)};
  for (int i = 0; i < n; ++i) {
    const Point2 z = sigma.node(i);
    const Point2 nz = sigma.normal(i);
    Complex u = 0.0;
    Complex du = 0.0;
    for (int j = 0; j < b.n; ++j) {
      const Point2 d = z - b.nodes.col(j);
      const double r = d.norm();
      const specfun::Bessel01 bz = specfun::bessel01(kappa * r);
      // Phi = (i/4) H0, dPhi/dn_z = -(i kappa/4) H1 <n_z, d>/r.
      const Complex phi(-0.25 * bz.y0, 0.25 * bz.j0);
      const Complex dphi =
          Complex(0.25 * kappa * bz.y1, -0.25 * kappa * bz.j1) * (nz.dot(d) / r);
      u -= phi * q(j);
      du -= dphi * q(j);
    }
    c.u(i) = u;
    c.dn_u(i) = du;
  }
  return c;
}

/// Row vector w with u_s(x) = w^T [u; du/dn] for Cauchy data on Sigma.
inline ComplexVector sigma_field_weights(const ArtificialInterface &sigma,
                                         double kappa, const Point2 &x) {
  const double rx = x.norm();
  if (!(rx > sigma.radius() + sigma.clearance(kappa))) {
    throw DomainError("sigma representation: |x| = " + std::to_string(rx) +
                      " is not beyond R + clearance = " +
                      std::to_string(sigma.radius() + sigma.clearance(kappa)));
  }
  const int n = sigma.size();
  const double w = sigma.weight();
  ComplexVector out(2 * n);
  for (int j = 0; j < n; ++j) {
    const Point2 z = sigma.node(j);
    const Point2 nz = sigma.normal(j);
    // grad_z Phi(x, z) = -grad_x Phi.
    const kernel::KernelJet k = kernel::fundamental_jet(kappa, x, z);
    const Complex dphi_dnz = -(k.grad_x * nz.x() + k.grad_y * nz.y());
    out(j) = w * dphi_dnz;
    out(n + j) = -w * k.value;
  }
  return out;
}

/// Row vector w with u_inf(xh) = w^T [u; du/dn].
inline ComplexVector sigma_farfield_weights(const ArtificialInterface &sigma,
                                            double kappa, const Point2 &xh) {
  require_unit_direction(xh, "sigma far-field");
  const int n = sigma.size();
  const double w = sigma.weight();
  ComplexVector out(2 * n);
  for (int j = 0; j < n; ++j) {
    const Point2 z = sigma.node(j);
    const Complex f = kernel::farfield(kappa, xh, z);
    out(j) = w * (-kI * kappa * xh.dot(sigma.normal(j))) * f;
    out(n + j) = -w * f;
  }
  return out;
}

inline Complex eval_scattered_from_sigma(const CauchyData &cauchy,
                                         const Point2 &x) {
  if (!(x.norm() > cauchy.interface.radius())) {
    throw DomainError("eval_scattered_from_sigma: point inside the interface");
  }
  const ComplexVector w = sigma_field_weights(cauchy.interface, cauchy.kappa, x);
  const int n = cauchy.interface.size();
  return w.head(n).cwiseProduct(cauchy.u).sum() +
         w.tail(n).cwiseProduct(cauchy.dn_u).sum();
}

inline Complex farfield_from_gamma(const NeumannDensity &density,
                                   const Point2 &xh) {
  require_unit_direction(xh, "farfield_from_gamma");
  const BoundaryRealization &b = density.boundary;
  const ComplexVector q = density.weighted();
  Complex u = 0.0;
  for (int j = 0; j < b.n; ++j) {
    u -= kernel::farfield(density.kappa, xh, b.nodes.col(j)) * q(j);
  }
  return u;
}

inline Complex farfield_from_sigma(const CauchyData &cauchy, const Point2 &xh) {
  const ComplexVector w =
      sigma_farfield_weights(cauchy.interface, cauchy.kappa, xh);
  const int n = cauchy.interface.size();
  return w.head(n).cwiseProduct(cauchy.u).sum() +
         w.tail(n).cwiseProduct(cauchy.dn_u).sum();
}

/// Unit vector at the given polar angle.
inline Point2 direction_at(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace rfscat
