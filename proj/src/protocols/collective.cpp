#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "darkpassage/measures.hpp"
#include "darkpassage/protocols.hpp"

namespace darkpassage {

RunReport run_collective_transfer(std::size_t n_spins, const QubitState& psi, const TransferParams& params) {
  if (n_spins < 4) throw ValidationError("collective: need at least four spins");
  if (params.backward) throw ValidationError("collective: backward passage is only available for three spins");
  detail::Stopwatch clock;
  RunReport report;
  report.experiment = "collective";

  const SpinRange group{1, n_spins - 2};
  std::vector<BondAssignment> bonds(n_spins - 1, {BondRole::Off});
  bonds.front() = {BondRole::Pump};
  bonds.back() = {BondRole::Stokes};
  PassagePlan full = counterintuitive_schedule(params, n_spins, bonds, Backend::FullSpace, group);
  report.warnings = full.warnings;

  std::vector<QubitState> in(n_spins, QubitState::up()), out(n_spins, QubitState::up());
  in.front() = psi;
  out.back() = QubitState(psi.alpha(), -psi.beta());
  Trajectory tr = propagate(full.schedule, QuantumState::product(in), params.integrator());
  const double full_fidelity = pure_fidelity(tr.final_state(), QuantumState::product(out));

  double non_symmetric = 0.0;
  for (const auto& s : tr.states) non_symmetric = std::max(non_symmetric, non_symmetric_population(s, group));

  // effective three-level model with the same envelopes
  PassagePlan eff = counterintuitive_schedule(params, 3, {{BondRole::Pump}, {BondRole::Stokes}}, Backend::Subspace);
  const QuantumState eff_final =
      propagate_final(eff.schedule, QuantumState::site_excitation(3, 0), params.integrator());
  const double eff_fidelity = detail::qubit_transfer_fidelity(psi, eff_final.amplitudes(), -1.0);

  report.fidelity = full_fidelity;
  const Vector2 q = project_onto_prefix(tr.final_state(), std::vector<QubitState>(n_spins - 1, QubitState::up()));
  if (q.norm() > 0.0) report.output_qubit = QubitState::from_vector(q);
  detail::attach_margin(report, full.pump, full.stokes, full.schedule.t_start(), full.schedule.t_end());
  report.add("fidelity", full_fidelity);
  report.add("effective_fidelity", eff_fidelity);
  report.add("fidelity_discrepancy", std::abs(full_fidelity - eff_fidelity));
  report.add("max_non_symmetric_population", non_symmetric);
  report.add("group_size", static_cast<double>(group.size()));
  detail::attach_trajectory(report, std::move(tr));
  report.wall_time_s = clock.seconds();
  return report;
}

}  // namespace darkpassage
