#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "darkpassage/schedule.hpp"

namespace darkpassage {

struct IntegratorOptions {
  double tolerance = 1e-10;         // bound on ||local error||_2 per step
  double norm_drift_limit = 1e-6;   // max | ||psi(t)|| - ||psi(0)|| | / ||psi(0)||
  std::size_t max_steps = 200'000'000;
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  double min_step = 0.0;
  double max_step = 0.0;
};

struct IntegrationResult {
  Vector final_state;
  double norm_drift = 0.0;
  IntegratorStats stats;
};

/// Explicit Dormand-Prince 5(4) integration of i dpsi/dt = H(t) psi over the
/// schedule window with adaptive steps and no renormalisation.
///
/// `sample_times` must be sorted and inside the window; `on_sample(k, psi)`
/// receives the dense-output state at sample_times[k] (the exact step state at
/// the window end). `on_step(t, psi)` sees every accepted step.
IntegrationResult integrate(const Schedule& schedule, const Vector& psi0, const IntegratorOptions& options,
                            std::span<const double> sample_times,
                            const std::function<void(std::size_t, const Vector&)>& on_sample,
                            const std::function<void(double, const Vector&)>& on_step);

/// t_start, t_start + stride, ... and finally t_end.
std::vector<double> sample_grid(double t_start, double t_end, double stride);

}  // namespace darkpassage
