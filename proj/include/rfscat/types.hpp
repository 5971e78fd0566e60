#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace rfscat {

using Complex = std::complex<double>;
using Point2 = Eigen::Vector2d;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace rfscat
