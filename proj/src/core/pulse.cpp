#include "darkpassage/pulse.hpp"

#include <cmath>
#include <numbers>

#include "darkpassage/types.hpp"

namespace darkpassage {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool finite(double x) { return std::isfinite(x); }

}  // namespace

PulseShape PulseShape::gaussian(double peak, double sigma, double center) {
  if (!finite(peak) || !finite(sigma) || !finite(center))
    throw ValidationError("gaussian pulse: parameters must be finite");
  if (peak < 0.0) throw ValidationError("gaussian pulse: peak must be >= 0");
  if (sigma <= 0.0) throw ValidationError("gaussian pulse: sigma must be > 0");
  return PulseShape{GaussianPulse{peak, sigma, center}};
}

PulseShape PulseShape::ramped_constant(double value, double t_on, double t_off, double ramp) {
  if (!finite(value) || !finite(t_on) || !finite(t_off) || !finite(ramp))
    throw ValidationError("ramped pulse: parameters must be finite");
  if (value < 0.0) throw ValidationError("ramped pulse: value must be >= 0");
  if (ramp <= 0.0) throw ValidationError("ramped pulse: ramp width must be > 0");
  if (!(t_on < t_off)) throw ValidationError("ramped pulse: t_on must precede t_off");
  return PulseShape{RampedConstantPulse{value, t_on, t_off, ramp}};
}

double PulseShape::operator()(double t) const {
  return std::visit(
      overloaded{
          [](const ZeroPulse&) { return 0.0; },
          [t](const GaussianPulse& g) {
            const double x = (t - g.center) / g.sigma;
            return g.peak * std::exp(-0.5 * x * x);
          },
          [t](const RampedConstantPulse& r) {
            const double s = std::numbers::sqrt2 * r.ramp;
            // erf difference can round to a tiny negative value far outside the plateau
            const double v = 0.5 * r.value * (std::erf((t - r.t_on) / s) - std::erf((t - r.t_off) / s));
            return v > 0.0 ? v : 0.0;
          },
      },
      shape_);
}

double PulseShape::derivative(double t) const {
  return std::visit(
      overloaded{
          [](const ZeroPulse&) { return 0.0; },
          [t](const GaussianPulse& g) {
            const double x = (t - g.center) / g.sigma;
            return -g.peak * x / g.sigma * std::exp(-0.5 * x * x);
          },
          [t](const RampedConstantPulse& r) {
            const double a = (t - r.t_on) / r.ramp;
            const double b = (t - r.t_off) / r.ramp;
            const double norm = r.value / (r.ramp * std::sqrt(2.0 * std::numbers::pi));
            return norm * (std::exp(-0.5 * a * a) - std::exp(-0.5 * b * b));
          },
      },
      shape_);
}

bool PulseShape::is_zero() const {
  return std::visit(overloaded{
                        [](const ZeroPulse&) { return true; },
                        [](const GaussianPulse& g) { return g.peak == 0.0; },
                        [](const RampedConstantPulse& r) { return r.value == 0.0; },
                    },
                    shape_);
}

PulseShape PulseShape::scaled(double factor) const {
  if (!(factor >= 0.0) || !finite(factor)) throw ValidationError("pulse scale factor must be finite and >= 0");
  return std::visit(overloaded{
                        [](const ZeroPulse&) { return PulseShape{}; },
                        [factor](GaussianPulse g) {
                          g.peak *= factor;
                          return PulseShape{g};
                        },
                        [factor](RampedConstantPulse r) {
                          r.value *= factor;
                          return PulseShape{r};
                        },
                    },
                    shape_);
}

PulseShape PulseShape::shifted(double dt) const {
  if (!finite(dt)) throw ValidationError("pulse shift must be finite");
  return std::visit(overloaded{
                        [](const ZeroPulse&) { return PulseShape{}; },
                        [dt](GaussianPulse g) {
                          g.center += dt;
                          return PulseShape{g};
                        },
                        [dt](RampedConstantPulse r) {
                          r.t_on += dt;
                          r.t_off += dt;
                          return PulseShape{r};
                        },
                    },
                    shape_);
}

double eval_pulse(const PulseShape& p, double t) { return p(t); }

}  // namespace darkpassage
