#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace darkpassage {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix3 = Eigen::Matrix3cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;
using Vector3 = Eigen::Vector3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr cplx kI{0.0, 1.0};

// All couplings are angular frequencies (hbar = 1).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed parameters, violated preconditions, dimension caps.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The numerics could not deliver a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class StepUnderflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NormDriftError : public NumericalError {
 public:
  NormDriftError(const std::string& what, double drift) : NumericalError(what), drift_(drift) {}
  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

}  // namespace darkpassage
