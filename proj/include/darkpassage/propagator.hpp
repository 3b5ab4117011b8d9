#pragma once

#include <cstddef>
#include <vector>

#include "darkpassage/chain.hpp"
#include "darkpassage/integrator.hpp"
#include "darkpassage/schedule.hpp"
#include "darkpassage/state.hpp"

namespace darkpassage {

/// Sampled solution of i dpsi/dt = H(t) psi.
struct Trajectory {
  Representation representation = Representation::FullSpace;
  std::size_t n_spins = 0;
  std::vector<double> times;
  std::vector<QuantumState> states;
  std::vector<double> norms;
  /// populations[k][site]: down probability of `site` at times[k].
  std::vector<std::vector<double>> populations;
  /// Per-site maximum over every accepted integrator step and every sample.
  std::vector<double> max_populations;
  double norm_drift = 0.0;
  IntegratorStats stats;

  const QuantumState& final_state() const { return states.back(); }
};

/// Down probability of every site (component populations in the adiabatic basis).
std::vector<double> site_populations(Representation rep, std::size_t n_spins, const Vector& amplitudes);

Trajectory propagate(const Schedule& schedule, const QuantumState& psi0, const IntegratorOptions& options = {});

/// Final state only; no trace is stored.
QuantumState propagate_final(const Schedule& schedule, const QuantumState& psi0,
                             const IntegratorOptions& options = {});

/// Time-ordered propagator T exp(-i int H dt) built column by column.
Matrix propagator_matrix(const Schedule& schedule, const IntegratorOptions& options = {},
                         std::size_t max_dim = 4096);

/// Density matrix as a weighted ensemble of pure states.
class MixedState {
 public:
  struct Branch {
    double weight;
    QuantumState state;
  };

  /// Weights must be >= 0 and sum to 1 within 1e-12; all states share one
  /// representation and spin count.
  explicit MixedState(std::vector<Branch> branches);

  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t n_spins() const { return branches_.front().state.n_spins(); }
  Representation representation() const { return branches_.front().state.representation(); }

 private:
  std::vector<Branch> branches_;
};

MixedState propagate_mixed(const Schedule& schedule, const MixedState& rho0, const IntegratorOptions& options = {});

/// Three-spin Z chain (bond 0 = K, bond 1 = L, zero phases) written in the
/// instantaneous eigenbasis: H_ad(t) = F diag(1, 0, -1) + gamma_dot * C.
/// Throws ValidationError if F drops below kFloorFraction * max F anywhere on
/// the window.
Schedule adiabatic_frame_schedule(const ChainSpec& chain, double t_start, double t_end, double sample_stride);

Trajectory propagate_adiabatic_frame(const ChainSpec& chain, double t_start, double t_end, double sample_stride,
                                     const QuantumState& psi0_adiabatic, const IntegratorOptions& options = {});

/// Lab-frame one-down amplitudes from adiabatic components at time t, and back.
Vector3 frame_to_lab(const ChainSpec& chain, double t, const Vector3& components);
Vector3 lab_to_frame(const ChainSpec& chain, double t, const Vector3& amplitudes);

}  // namespace darkpassage
