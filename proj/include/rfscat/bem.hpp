#pragma once

// Nystrom discretization of the combined-field equation
//
//   (1/2 + K' - i eta V) psi = d u_inc/dn - i eta u_inc   on Gamma,
//
// for the Neumann data psi = du/dn of the total field at a sound-soft
// boundary. The equation is multiplied by two and the logarithmic parts of
// the single-layer and adjoint double-layer kernels are integrated with the
// trigonometric (Kussmaul-Martensen) weights; the smooth remainders use the
// trapezoidal rule. Unknowns are psi at the nodes phi_i = 2 pi i / n.

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "specfun.hpp"
#include "types.hpp"

namespace rfscat {

struct HelmholtzContext {
  double kappa = 1.0;
  double eta = 1.0;
  Point2 direction{1.0, 0.0};

  HelmholtzContext(double wavenumber, double coupling, Point2 d)
      : kappa(wavenumber), eta(coupling), direction(std::move(d)) {
    if (!(std::isfinite(kappa) && kappa > 0.0)) {
      throw DomainError("HelmholtzContext: wavenumber must be positive");
    }
    if (!(std::isfinite(eta) && eta * kappa > 0.0)) {
      throw DomainError("HelmholtzContext: coupling must satisfy eta * kappa > 0");
    }
    if (std::abs(direction.norm() - 1.0) > 1e-14) {
      throw DomainError("HelmholtzContext: incident direction must be a unit vector");
    }
  }

  /// eta = kappa.
  static HelmholtzContext with_default_coupling(double wavenumber, Point2 d) {
    return HelmholtzContext(wavenumber, wavenumber, std::move(d));
  }

  Complex incident(const Point2 &x) const {
    return std::polar(1.0, kappa * direction.dot(x));
  }
};

struct IncidentTrace {
  ComplexVector dirichlet;
  ComplexVector neumann;
};

inline IncidentTrace incident_trace(const HelmholtzContext &ctx,
                                    const BoundaryRealization &boundary) {
  IncidentTrace t{ComplexVector(boundary.n), ComplexVector(boundary.n)};
  for (int i = 0; i < boundary.n; ++i) {
    const Complex u = ctx.incident(boundary.nodes.col(i));
    t.dirichlet(i) = u;
    t.neumann(i) =
        kI * ctx.kappa * ctx.direction.dot(boundary.normals.col(i)) * u;
  }
  return t;
}

/// Neumann data of the total field on a boundary realization.
struct NeumannDensity {
  BoundaryRealization boundary;
  ComplexVector values;
  double kappa = 1.0;
  double relative_residual = 0.0;
  double rcond = 1.0;

  /// Trapezoidal weights times density: q_j = psi_j |gamma'_j| 2 pi / n.
  ComplexVector weighted() const {
    return (values.array() * boundary.jacobians.array() *
            (kTwoPi / boundary.n))
        .matrix();
  }
};

namespace detail {

/// Weights R_k with sum_k R_{|i-k|} f(t_k) ~ int ln(4 sin^2((t_i - s)/2)) f(s) ds
/// on n = 2 m equidistant nodes.
inline RealVector log_quadrature_weights(int n) {
  const int m = n / 2;
  std::vector<double> cos_table(n);
  for (int k = 0; k < n; ++k) cos_table[k] = std::cos(kTwoPi * k / n);
  RealVector w(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    long idx = 0;
    for (int q = 1; q < m; ++q) {
      idx = (idx + k) % n;
      s += cos_table[idx] / q;
    }
    w(k) = -(2.0 * kPi / m) * s - (kPi / (double(m) * m)) * (k % 2 == 0 ? 1.0 : -1.0);
  }
  return w;
}

}  // namespace detail

/// Dense Nystrom matrix of 2 (1/2 + K' - i eta V); acts on nodal psi.
inline ComplexMatrix assemble_cfie(const HelmholtzContext &ctx,
                                   const BoundaryRealization &b) {
  const int n = b.n;
  if (n % 2 != 0) throw DomainError("assemble_cfie: node count must be even");
  if (!(b.jacobians.minCoeff() > kMinJacobian)) {
    throw GeometryError("assemble_cfie: degenerate jacobian");
  }
  const double kappa = ctx.kappa;
  const Complex ieta = kI * ctx.eta;
  const double h = kTwoPi / n;
  const RealVector rw = detail::log_quadrature_weights(n);
  RealVector logsin(n);
  logsin(0) = 0.0;
  for (int k = 1; k < n; ++k) {
    const double s = std::sin(kPi * k / n);
    logsin(k) = std::log(4.0 * s * s);
  }
  constexpr double inv2pi = 1.0 / kTwoPi;

  ComplexMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    const Point2 xi = b.nodes.col(i);
    const Point2 ni = b.normals.col(i);
    const double ji = b.jacobians(i);
    {
      const double m1 = -inv2pi;
      const Complex m2 = Complex(-std::numbers::egamma / kPi -
                                     std::log(0.5 * kappa * ji) / kPi,
                                 0.5);
      const double l2 = ni.dot(b.second.col(i)) / (kTwoPi * ji * ji);
      A(i, i) = 1.0 + (rw(0) * (-ieta * m1) + h * (l2 - ieta * m2)) * ji;
    }
    for (int j = i + 1; j < n; ++j) {
      const Point2 xj = b.nodes.col(j);
      const Point2 d = xi - xj;
      const double r = d.norm();
      const specfun::Bessel01 bz = specfun::bessel01(kappa * r);
      const int k = j - i;
      const double lg = logsin(k);
      const double R = rw(k);

      const Complex m(-0.5 * bz.y0, 0.5 * bz.j0);  // (i/2) H0
      const double m1 = -inv2pi * bz.j0;
      const Complex m2 = m - m1 * lg;
      const Complex sl1 = -ieta * m1;
      const Complex sl2 = -ieta * m2;

      // -(i kappa / 2) H1(kappa r) / r times the normal projection.
      const Complex hk = Complex(0.5 * kappa * bz.y1, -0.5 * kappa * bz.j1) / r;
      const double jk = kappa * inv2pi * bz.j1 / r;

      const double pij = ni.dot(d);
      const double pji = -b.normals.col(j).dot(d);
      const Complex lij = hk * pij;
      const double l1ij = jk * pij;
      const Complex lji = hk * pji;
      const double l1ji = jk * pji;

      A(i, j) = (R * (l1ij + sl1) + h * (lij - l1ij * lg + sl2)) * b.jacobians(j);
      A(j, i) = (R * (l1ji + sl1) + h * (lji - l1ji * lg + sl2)) * ji;
    }
  }
  return A;
}

/// Right-hand side 2 (d u_inc/dn - i eta u_inc) at the nodes.
inline ComplexVector cfie_rhs(const HelmholtzContext &ctx,
                              const BoundaryRealization &b) {
  const IncidentTrace t = incident_trace(ctx, b);
  return 2.0 * (t.neumann - kI * ctx.eta * t.dirichlet);
}

inline constexpr double kMinRcond = 1e-12;
inline constexpr double kMaxRelativeResidual = 1e-10;

/// Assembled and factorized system for one boundary realization.
class CfieSystem {
 public:
  CfieSystem(const HelmholtzContext &ctx, const BoundaryRealization &b)
      : matrix_(assemble_cfie(ctx, b)), lu_(matrix_) {
    rcond_ = lu_.rcond();
    if (!(rcond_ > kMinRcond)) {
      std::ostringstream os;
      os << "CfieSystem: reciprocal condition estimate " << rcond_
         << " below " << kMinRcond << " (n = " << b.n
         << ", kappa = " << ctx.kappa << ")";
      throw NumericalError(os.str());
    }
  }

  const ComplexMatrix &matrix() const { return matrix_; }
  double rcond() const { return rcond_; }

  /// Solve and report the relative residual max-norm.
  ComplexVector solve(const ComplexVector &rhs, double *relative_residual) const {
    if (rhs.size() != matrix_.rows()) {
      throw DimensionError("CfieSystem::solve: rhs length mismatch");
    }
    ComplexVector x = lu_.solve(rhs);
    const double bnorm = rhs.cwiseAbs().maxCoeff();
    double res = bnorm > 0.0
                     ? (matrix_ * x - rhs).cwiseAbs().maxCoeff() / bnorm
                     : 0.0;
    if (res > kMaxRelativeResidual) {
      x += lu_.solve(rhs - matrix_ * x);
      res = (matrix_ * x - rhs).cwiseAbs().maxCoeff() / bnorm;
    }
    if (res > kMaxRelativeResidual) {
      std::ostringstream os;
      os << "CfieSystem::solve: relative residual " << res << " exceeds "
         << kMaxRelativeResidual << " (rcond " << rcond_ << ")";
      throw NumericalError(os.str());
    }
    if (relative_residual) *relative_residual = res;
    return x;
  }

 private:
  ComplexMatrix matrix_;
  Eigen::PartialPivLU<ComplexMatrix> lu_;
  double rcond_ = 0.0;
};

inline NeumannDensity solve_neumann(const HelmholtzContext &ctx,
                                    const BoundaryRealization &b) {
  const CfieSystem system(ctx, b);
  NeumannDensity out;
  out.boundary = b;
  out.kappa = ctx.kappa;
  out.rcond = system.rcond();
  out.values = system.solve(cfie_rhs(ctx, b), &out.relative_residual);
  return out;
}

}  // namespace rfscat
