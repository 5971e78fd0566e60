#pragma once

// Second-order statistics of the scattered field from Cauchy data on Sigma.
//
// Samples v = [u_s; du_s/dn] on Sigma are accumulated as raw sums of v and
// v v^*; the mean is only subtracted when a variance is evaluated. The
// correlation matrix C = E[v v^*] is compressed by a trace-controlled pivoted
// Cholesky factorization C ~ L L^*, after which the correlation of u_s at any
// point outside Sigma costs O(n m):
//
//   Cor[u_s](x,x) ~ sum_i |w(x)^T l_i|^2,
//
// where w(x) are the quadrature weights of the Sigma representation.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "potentials.hpp"
#include "types.hpp"

namespace rfscat {

/// Finalized statistics of the Cauchy data: E[v] and C = E[v v^*].
struct CorrelationBundle {
  ArtificialInterface interface;
  double kappa;
  long count;
  ComplexVector mean;
  ComplexMatrix correlation;
};

/// Streaming sums of v and v v^*. Only the lower triangle of the correlation
/// sum is stored; columns are buffered and folded in as rank-k updates.
class CauchyAccumulator {
 public:
  static constexpr int kBatch = 32;

  CauchyAccumulator(const ArtificialInterface &sigma, double kappa)
      : sigma_(sigma),
        kappa_(kappa),
        mean_sum_(ComplexVector::Zero(2 * sigma.size())),
        corr_sum_(ComplexMatrix::Zero(2 * sigma.size(), 2 * sigma.size())),
        buffer_(2 * sigma.size(), kBatch) {}

  int dimension() const { return static_cast<int>(mean_sum_.size()); }
  long count() const { return count_; }
  const ArtificialInterface &interface() const { return sigma_; }
  double kappa() const { return kappa_; }

  void add(const ComplexVector &v) {
    if (v.size() != dimension()) {
      throw DimensionError("CauchyAccumulator: sample length " +
                           std::to_string(v.size()) + ", expected " +
                           std::to_string(dimension()));
    }
    mean_sum_ += v;
    buffer_.col(pending_++) = v;
    ++count_;
    if (pending_ == kBatch) flush();
  }

  void add(const CauchyData &sample) {
    if (sample.interface.size() != sigma_.size()) {
      throw DimensionError("CauchyAccumulator: interface node count mismatch");
    }
    add(sample.stacked());
  }

  /// Fold another accumulator's sums into this one.
  void merge(CauchyAccumulator &other) {
    if (other.dimension() != dimension()) {
      throw DimensionError("CauchyAccumulator::merge: dimension mismatch");
    }
    flush();
    other.flush();
    mean_sum_ += other.mean_sum_;
    corr_sum_.triangularView<Eigen::Lower>() += other.corr_sum_;
    count_ += other.count_;
  }

  CorrelationBundle finalize() {
    if (count_ == 0) throw DomainError("CauchyAccumulator: no samples accumulated");
    flush();
    const double inv = 1.0 / static_cast<double>(count_);
    ComplexMatrix c = corr_sum_.selfadjointView<Eigen::Lower>();
    c *= inv;
    for (int i = 0; i < c.rows(); ++i) c(i, i) = c(i, i).real();
    return {sigma_, kappa_, count_, mean_sum_ * inv, std::move(c)};
  }

 private:
  void flush() {
    if (pending_ == 0) return;
    corr_sum_.selfadjointView<Eigen::Lower>().rankUpdate(
        buffer_.leftCols(pending_));
    pending_ = 0;
  }

  ArtificialInterface sigma_;
  double kappa_;
  ComplexVector mean_sum_;
  ComplexMatrix corr_sum_;
  ComplexMatrix buffer_;
  int pending_ = 0;
  long count_ = 0;
};

/// C ~ L L^* with trace(C - L L^*) < epsilon trace(C).
struct LowRankFactor {
  ComplexMatrix L;
  std::vector<int> pivots;
  /// Pivot values (residual diagonal at the chosen index), in order.
  std::vector<double> pivot_values;
  /// Residual trace after each step.
  std::vector<double> residual_history;
  double trace = 0.0;
  double residual_trace = 0.0;
  double trace_ratio = 0.0;
  double epsilon = 0.0;

  int rank() const { return static_cast<int>(L.cols()); }
};

inline constexpr double kDefaultEpsilon = 1e-12;

inline LowRankFactor pivoted_cholesky(const ComplexMatrix &C,
                                      double epsilon = kDefaultEpsilon) {
  if (C.rows() != C.cols()) throw DimensionError("pivoted_cholesky: matrix not square");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("pivoted_cholesky: epsilon must lie in (0,1)");
  }
  const int dim = static_cast<int>(C.rows());
  const double scale = dim > 0 ? C.cwiseAbs().maxCoeff() : 0.0;
  if ((C - C.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("pivoted_cholesky: matrix is not Hermitian");
  }
  RealVector D = C.diagonal().real();
  const double trace = D.sum();
  LowRankFactor f;
  f.trace = trace;
  f.epsilon = epsilon;
  if (D.minCoeff() < -1e-12 * std::abs(trace)) {
    throw DomainError("pivoted_cholesky: negative diagonal entry");
  }
  const double stop = epsilon * trace;
  const double negative_tol = 1e-12 * trace;
  double residual = trace;
  ComplexMatrix L(dim, std::min(dim, 64));
  int m = 0;
  while (m < dim && residual >= stop && residual > 0.0) {
    Eigen::Index p = 0;
    const double pivot = D.maxCoeff(&p);
    if (!(pivot > 0.0)) {
      if (pivot < -negative_tol) {
        throw NumericalError("pivoted_cholesky: negative pivot " +
                             std::to_string(pivot));
      }
      break;
    }
    if (m == L.cols()) L.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(dim, 2 * L.cols()));
    ComplexVector col = C.col(p);
    if (m > 0) col.noalias() -= L.leftCols(m) * L.row(p).head(m).adjoint();
    col /= std::sqrt(pivot);
    L.col(m) = col;
    D -= col.cwiseAbs2();
    D(p) = 0.0;
    if (D.minCoeff() < -negative_tol) {
      throw NumericalError("pivoted_cholesky: residual diagonal below round-off level");
    }
    residual = D.sum();
    f.pivots.push_back(static_cast<int>(p));
    f.pivot_values.push_back(pivot);
    f.residual_history.push_back(residual);
    ++m;
  }
  f.L = L.leftCols(m);
  f.residual_trace = residual;
  f.trace_ratio = trace > 0.0 ? residual / trace : 0.0;
  return f;
}

/// Expectation and variance of a complex quantity at a set of points.
struct FieldStatistics {
  std::vector<Point2> points;
  std::vector<Complex> expectation;
  std::vector<double> variance;
};

/// E[u_s](x) from the expected Cauchy data.
inline Complex expectation_at(const ComplexVector &mean,
                              const ArtificialInterface &sigma, double kappa,
                              const Point2 &x) {
  if (!(x.norm() > sigma.radius())) {
    throw DomainError("expectation_at: point inside the interface");
  }
  if (mean.size() != 2 * sigma.size()) {
    throw DimensionError("expectation_at: mean length mismatch");
  }
  return sigma_field_weights(sigma, kappa, x).transpose() * mean;
}

/// sum_i |w^T l_i|^2; nonnegative by construction.
inline double lowrank_quadratic_form(const LowRankFactor &f,
                                     const ComplexVector &w) {
  if (f.rank() == 0) return 0.0;
  return (f.L.transpose() * w).squaredNorm();
}

inline double correlation_at(const LowRankFactor &f,
                             const ArtificialInterface &sigma, double kappa,
                             const Point2 &x) {
  if (!(x.norm() > sigma.radius())) {
    throw DomainError("correlation_at: point inside the interface");
  }
  if (f.rank() > 0 && f.L.rows() != 2 * sigma.size()) {
    throw DimensionError("correlation_at: factor has wrong row count");
  }
  return lowrank_quadratic_form(f, sigma_field_weights(sigma, kappa, x));
}

namespace detail {

/// Relative resolution of Cor - |E|^2 in double precision.
inline constexpr double kVarianceResolution = 32.0 * std::numeric_limits<double>::epsilon();

/// Cor - |E|^2 from a weight vector, clamped at zero. A negative value below
/// the truncation bound |w|^2 eps trace(C) + 1e-10 is an error; values within
/// the rounding resolution of the difference are returned as zero.
inline double variance_from_weights(const ComplexVector &mean,
                                    const LowRankFactor &f,
                                    const ComplexVector &w, Complex *expect) {
  const Complex e = w.transpose() * mean;
  if (expect) *expect = e;
  const double cor = lowrank_quadratic_form(f, w);
  const double raw = cor - std::norm(e);
  const double tol = w.squaredNorm() * f.epsilon * f.trace + 1e-10;
  if (raw < -tol) {
    std::ostringstream os;
    os << "variance: pre-clamp value " << raw << " below tolerance " << -tol;
    throw NumericalError(os.str());
  }
  if (raw <= kVarianceResolution * std::max(cor, std::norm(e))) return 0.0;
  return raw;
}

}  // namespace detail

inline double variance_at(const ComplexVector &mean, const LowRankFactor &f,
                          const ArtificialInterface &sigma, double kappa,
                          const Point2 &x) {
  if (!(x.norm() > sigma.radius())) {
    throw DomainError("variance_at: point inside the interface");
  }
  return detail::variance_from_weights(
      mean, f, sigma_field_weights(sigma, kappa, x), nullptr);
}

inline FieldStatistics field_statistics(const CorrelationBundle &bundle,
                                        const LowRankFactor &f,
                                        const std::vector<Point2> &points) {
  FieldStatistics out;
  out.points = points;
  out.expectation.resize(points.size());
  out.variance.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].norm() > bundle.interface.radius())) {
      throw DomainError("field_statistics: point inside the interface");
    }
    const ComplexVector w =
        sigma_field_weights(bundle.interface, bundle.kappa, points[i]);
    out.variance[i] =
        detail::variance_from_weights(bundle.mean, f, w, &out.expectation[i]);
  }
  return out;
}

/// Expected far field and its variance at unit directions.
inline FieldStatistics farfield_statistics(const ComplexVector &mean,
                                           const LowRankFactor &f,
                                           const ArtificialInterface &sigma,
                                           double kappa,
                                           const std::vector<Point2> &directions) {
  if (mean.size() != 2 * sigma.size()) {
    throw DimensionError("farfield_statistics: mean length mismatch");
  }
  FieldStatistics out;
  out.points = directions;
  out.expectation.resize(directions.size());
  out.variance.resize(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const ComplexVector w = sigma_farfield_weights(sigma, kappa, directions[i]);
    out.variance[i] =
        detail::variance_from_weights(mean, f, w, &out.expectation[i]);
  }
  return out;
}

}  // namespace rfscat
