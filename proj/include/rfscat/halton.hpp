#pragma once

// Plain (unscrambled) Halton points in [0,1]^P and their affine image in
// [-1,1]^P.

#include <boost/math/special_functions/prime.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace rfscat {

/// Radical inverse of index in the given base: digits mirrored about the
/// radix point. Digits are accumulated as integers and divided once.
inline double radical_inverse(std::uint64_t index, std::uint32_t base) {
  std::uint64_t reversed = 0;
  std::uint64_t denom = 1;
  while (index > 0) {
    reversed = reversed * base + index % base;
    denom *= base;
    index /= base;
  }
  return static_cast<double>(reversed) / static_cast<double>(denom);
}

class HaltonSampler {
 public:
  explicit HaltonSampler(int dimension, std::uint64_t start_index = 1)
      : start_(start_index) {
    if (dimension < 1 ||
        dimension > static_cast<int>(boost::math::max_prime)) {
      throw DimensionError("HaltonSampler: unsupported dimension " +
                           std::to_string(dimension));
    }
    if (start_index < 1) {
      throw DomainError("HaltonSampler: start index must be >= 1");
    }
    bases_.reserve(dimension);
    for (int j = 0; j < dimension; ++j) bases_.push_back(boost::math::prime(j));
  }

  int dimension() const { return static_cast<int>(bases_.size()); }
  std::uint64_t start_index() const { return start_; }
  const std::vector<std::uint32_t> &bases() const { return bases_; }

  /// Halton point with the given absolute index, in [0,1]^P.
  RealVector unit_point(std::uint64_t index) const {
    RealVector u(dimension());
    for (int j = 0; j < dimension(); ++j) u(j) = radical_inverse(index, bases_[j]);
    return u;
  }

  /// Sample i (zero-based) mapped to [-1,1]^P; uses Halton index start + i.
  RealVector sample(std::uint64_t i) const {
    return (2.0 * unit_point(start_ + i).array() - 1.0).matrix();
  }

 private:
  std::uint64_t start_;
  std::vector<std::uint32_t> bases_;
};

inline RealVector halton_point(std::uint64_t index, int dimension) {
  return HaltonSampler(dimension).unit_point(index);
}

inline std::vector<RealVector> sample_parameters(const HaltonSampler &sampler,
                                                 std::size_t count) {
  if (count < 1) throw DomainError("sample_parameters: count must be >= 1");
  std::vector<RealVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.sample(i));
  return out;
}

}  // namespace rfscat
