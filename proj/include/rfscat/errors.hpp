#pragma once

#include <stdexcept>
#include <string>

namespace rfscat {

/// Argument outside the domain of a function (non-finite input, point inside
/// an excluded region, non-unit direction, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Mismatched vector or matrix dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degenerate, self-intersecting or wrongly oriented boundary curve.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A boundary realization leaves the artificial interface.
class ContainmentError : public std::runtime_error {
 public:
  ContainmentError(const std::string &what, long sample_index = -1)
      : std::runtime_error(what), sample_index_(sample_index) {}
  long sample_index() const { return sample_index_; }

 private:
  long sample_index_;
};

/// Ill-conditioned solve, indefinite correlation matrix, etc.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested order beyond the supported range of the Bessel routines.
class UnsupportedOrderError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Invalid run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rfscat
