#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "darkpassage/dark_states.hpp"
#include "darkpassage/measures.hpp"
#include "darkpassage/protocols.hpp"

namespace darkpassage {

namespace {

/// Amplitudes of `site` with every other spin up.
QubitState qubit_on_site(const QuantumState& s, std::size_t site) {
  const Vector& a = s.amplitudes();
  const cplx up = a(0);
  const cplx down = a(static_cast<Eigen::Index>(std::uint64_t{1} << spin_bit(s.n_spins(), site)));
  if (std::abs(up) == 0.0 && std::abs(down) == 0.0) return QubitState::up();
  return QubitState(up, down);
}

/// Index of the sample closest to t.
std::size_t nearest_sample(const Trajectory& tr, double t) {
  const auto it = std::lower_bound(tr.times.begin(), tr.times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - tr.times.begin());
  if (k == tr.times.size()) return k - 1;
  if (k > 0 && t - tr.times[k - 1] < tr.times[k] - t) --k;
  return k;
}

double max_over(const std::vector<double>& v, std::size_t first, std::size_t last, std::size_t step) {
  double m = 0.0;
  for (std::size_t i = first; i <= last && i < v.size(); i += step) m = std::max(m, v[i]);
  return m;
}

void reject_backward(const TransferParams& p, const char* what) {
  if (p.backward) throw ValidationError(std::string(what) + ": backward passage is only available for three spins");
}

struct ChainRun {
  PassagePlan plan;
  Trajectory conditional;  // one-down trajectory from the first site
};

/// Single-excitation run from site 0 and the common report fields.
ChainRun run_single_excitation(const TransferParams& params, std::size_t n_spins,
                               const std::vector<BondAssignment>& bonds, const QubitState& psi, RunReport& report) {
  PassagePlan plan = counterintuitive_schedule(params, n_spins, bonds, Backend::Subspace);
  report.warnings = plan.warnings;
  Trajectory tr = propagate(plan.schedule, QuantumState::site_excitation(n_spins, 0), params.integrator());
  const Vector& c = tr.final_state().amplitudes();
  const double sign = transfer_sign(n_spins);
  report.fidelity = detail::qubit_transfer_fidelity(psi, c, sign);
  report.output_qubit = detail::transferred_qubit(psi, c);
  detail::attach_margin(report, plan.pump, plan.stokes, plan.schedule.t_start(), plan.schedule.t_end());
  detail::attach_trajectory(report, detail::embed_single_excitation(tr, psi));
  report.add("fidelity", report.fidelity);
  report.add("transfer_sign", sign);
  report.add("counterintuitive", plan.counterintuitive ? 1.0 : 0.0);
  return {std::move(plan), std::move(tr)};
}

}  // namespace

RunReport run_transfer_3spin(const QubitState& psi, const TransferParams& params) {
  detail::Stopwatch clock;
  RunReport report;
  report.experiment = "transfer3";
  PassagePlan plan = counterintuitive_schedule(params, 3, {{BondRole::Pump}, {BondRole::Stokes}}, Backend::FullSpace);
  report.warnings = plan.warnings;

  const QubitState up = QubitState::up();
  const QubitState flipped(psi.alpha(), -psi.beta());
  const std::size_t source = params.backward ? 2 : 0, target = params.backward ? 0 : 2;
  std::vector<QubitState> in(3, up), out(3, up);
  in[source] = psi;
  out[target] = flipped;

  Trajectory tr = propagate(plan.schedule, QuantumState::product(in), params.integrator());
  const QuantumState expected = QuantumState::product(out);
  report.fidelity = pure_fidelity(tr.final_state(), expected);
  report.output_qubit = qubit_on_site(tr.final_state(), target);
  detail::attach_margin(report, plan.pump, plan.stokes, plan.schedule.t_start(), plan.schedule.t_end());
  report.add("fidelity", report.fidelity);
  report.add("infidelity", 1.0 - report.fidelity);
  report.add("middle_max_down", tr.max_populations[1]);
  report.add("counterintuitive", plan.counterintuitive ? 1.0 : 0.0);
  report.add("backward", params.backward ? 1.0 : 0.0);
  detail::attach_trajectory(report, std::move(tr));
  report.wall_time_s = clock.seconds();
  return report;
}

RunReport run_astirap(std::size_t n, const QubitState& psi, const TransferParams& params) {
  if (n == 0) throw ValidationError("astirap: n must be >= 1");
  reject_backward(params, "astirap");
  detail::Stopwatch clock;
  const std::size_t n_spins = 2 * n + 1;
  std::vector<BondAssignment> bonds;
  for (std::size_t b = 0; b + 1 < n_spins; ++b) bonds.push_back({b % 2 == 0 ? BondRole::Pump : BondRole::Stokes});

  RunReport report;
  report.experiment = "astirap";
  ChainRun run = run_single_excitation(params, n_spins, bonds, psi, report);

  // odd 0-based sites are the ones the dark state never touches
  report.add("max_even_site_down", max_over(report.max_down_population, 1, n_spins - 2, 2));
  report.add("max_odd_interior_down", n > 1 ? max_over(report.max_down_population, 2, n_spins - 3, 2) : 0.0);

  const double t_mid = params.t0 + 0.5 * params.delay_value();
  const std::size_t k = nearest_sample(run.conditional, t_mid);
  const double tk = run.conditional.times[k];
  const Vector dark = astirap_dark_state(n, run.plan.pump(tk), run.plan.stokes(tk));
  report.add("midpassage_time", tk);
  report.add("midpassage_dark_overlap", pure_fidelity(dark, run.conditional.states[k].amplitudes()));
  report.wall_time_s = clock.seconds();
  return report;
}

RunReport run_sstirap(std::size_t n_spins, const QubitState& psi, const TransferParams& params) {
  if (n_spins < 5 || n_spins % 2 == 0) throw ValidationError("sstirap: chain length must be odd and >= 5");
  if (!(params.M > 0.0)) throw ValidationError("sstirap: M must be > 0");
  reject_backward(params, "sstirap");
  detail::Stopwatch clock;
  std::vector<BondAssignment> bonds(n_spins - 1, {BondRole::Straddle});
  bonds.front() = {BondRole::Pump};
  bonds.back() = {BondRole::Stokes};

  RunReport report;
  report.experiment = "sstirap";
  ChainRun run = run_single_excitation(params, n_spins, bonds, psi, report);

  report.add("max_interior_odd_down", max_over(report.max_down_population, 2, n_spins - 3, 2));
  report.add("max_even_site_down", max_over(report.max_down_population, 1, n_spins - 2, 2));

  const double t_mid = params.t0 + 0.5 * params.delay_value();
  const std::size_t k = nearest_sample(run.conditional, t_mid);
  const double tk = run.conditional.times[k];
  const Vector dark = sstirap_dark_state(n_spins, run.plan.pump(tk), run.plan.stokes(tk), params.M);
  report.add("midpassage_time", tk);
  report.add("midpassage_dark_overlap", pure_fidelity(dark, run.conditional.states[k].amplitudes()));
  report.add("M", params.M);
  report.wall_time_s = clock.seconds();
  return report;
}

}  // namespace darkpassage
