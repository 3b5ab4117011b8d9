#include <cmath>
#include <vector>

#include "common.hpp"
#include "darkpassage/measures.hpp"
#include "darkpassage/protocols.hpp"

namespace darkpassage {

namespace {

// full-space indices for three spins, bit 2 = spin 1
constexpr Eigen::Index kDUU = 4, kUDU = 2, kUUD = 1;
constexpr Eigen::Index kUDD = 3, kDUD = 5, kDDU = 6;

}  // namespace

PolarizationReport run_imperfect_polarization(const QubitState& psi, double p, const TransferParams& params) {
  if (!(p >= 0.0 && p <= 0.5)) throw ValidationError("polarization: p must lie in [0, 1/2]");
  if (params.backward) throw ValidationError("polarization: backward passage is not supported");
  detail::Stopwatch clock;
  PolarizationReport out;
  RunReport& report = out.run;
  report.experiment = "polarization";

  PassagePlan plan = counterintuitive_schedule(params, 3, {{BondRole::Pump}, {BondRole::Stokes}}, Backend::FullSpace);
  report.warnings = plan.warnings;
  const IntegratorOptions opt = params.integrator();
  const QubitState up = QubitState::up(), down = QubitState::down();

  const std::vector<QubitState> in_up{psi, up, up}, in_down{psi, down, up};
  Trajectory tr = propagate(plan.schedule, QuantumState::product(in_up), opt);
  const QuantumState final_up = tr.final_state();
  const QuantumState final_down = propagate_final(plan.schedule, QuantumState::product(in_down), opt);
  const MixedState rho_f({{1.0 - p, final_up}, {p, final_down}});
  out.reduced_last = partial_trace_to_last(rho_f);
  out.numeric_fidelity = corrected_mixed_fidelity(psi, out.reduced_last);

  const double a2 = std::norm(psi.alpha()), b2 = std::norm(psi.beta());
  out.formula_fidelity = 1.0 - 2.0 * p * a2 * b2;
  out.adiabatic_fidelity = std::sqrt(1.0 - 4.0 * p * a2 * b2);

  const PulseShape K = plan.pump, L = plan.stokes;
  out.theta = integrate_simpson([&](double t) { return std::hypot(K(t), L(t)); }, plan.schedule.t_start(),
                                plan.schedule.t_end(), 20000);

  // branch states started from |up down up> and |down down up>
  const Vector du = propagate_final(plan.schedule, QuantumState::basis_state(3, kUDU), opt).amplitudes();
  const Vector dd = propagate_final(plan.schedule, QuantumState::basis_state(3, kDDU), opt).amplitudes();
  out.branch_down_up = Vector3{du(kDUU), du(kUDU), du(kUUD)};
  out.branch_down_down = Vector3{dd(kUDD), dd(kDUD), dd(kDDU)};
  const double s = std::sin(out.theta), c = std::cos(out.theta);
  const Vector3 expect_du{cplx(0.0, -s), c, 0.0};
  const Vector3 expect_dd{c, cplx(0.0, -s), 0.0};
  out.branch_down_up_overlap = std::abs(expect_du.dot(out.branch_down_up));
  out.branch_down_down_overlap = std::abs(expect_dd.dot(out.branch_down_down));

  report.fidelity = out.numeric_fidelity;
  detail::attach_margin(report, plan.pump, plan.stokes, plan.schedule.t_start(), plan.schedule.t_end());
  report.add("fidelity", out.numeric_fidelity);
  report.add("p", p);
  report.add("formula_fidelity", out.formula_fidelity);
  report.add("formula_deviation", std::abs(out.numeric_fidelity - out.formula_fidelity));
  report.add("adiabatic_fidelity", out.adiabatic_fidelity);
  report.add("adiabatic_deviation", std::abs(out.numeric_fidelity - out.adiabatic_fidelity));
  report.add("theta", out.theta);
  report.add("branch_down_up_overlap", out.branch_down_up_overlap);
  report.add("branch_down_down_overlap", out.branch_down_down_overlap);
  detail::attach_trajectory(report, std::move(tr));
  report.norm_drift = std::max(report.norm_drift, std::abs(final_down.norm() - 1.0));
  report.wall_time_s = clock.seconds();
  return out;
}

}  // namespace darkpassage
