#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stripmap {

using Complex = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Invalid shapes: overlapping slits, curves leaving the strip, points off the domain.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (psi at +-1, K at r >= 1).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residual_history(std::move(residuals)) {}

  std::vector<double> residual_history;
};

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace stripmap
