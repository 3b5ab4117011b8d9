#pragma once

#include <variant>

namespace darkpassage {

struct GaussianPulse {
  double peak;    // G
  double sigma;   // standard deviation in time
  double center;  // t0
};

/// Plateau of height `value` between t_on and t_off with error-function edges
/// of width `ramp`.
struct RampedConstantPulse {
  double value;
  double t_on;
  double t_off;
  double ramp;
};

struct ZeroPulse {};

/// Time-dependent coupling envelope. Always non-negative and smooth.
class PulseShape {
 public:
  PulseShape() = default;  // Zero

  static PulseShape gaussian(double peak, double sigma, double center);
  static PulseShape ramped_constant(double value, double t_on, double t_off, double ramp);
  static PulseShape zero() { return PulseShape{}; }

  double operator()(double t) const;
  double derivative(double t) const;

  bool is_zero() const;
  const std::variant<ZeroPulse, GaussianPulse, RampedConstantPulse>& shape() const { return shape_; }

  /// Peak amplitude multiplied by `factor` (factor >= 0).
  PulseShape scaled(double factor) const;
  /// Same envelope translated by `dt` in time.
  PulseShape shifted(double dt) const;

 private:
  explicit PulseShape(std::variant<ZeroPulse, GaussianPulse, RampedConstantPulse> s) : shape_(s) {}
  std::variant<ZeroPulse, GaussianPulse, RampedConstantPulse> shape_{ZeroPulse{}};
};

double eval_pulse(const PulseShape& p, double t);

}  // namespace darkpassage
