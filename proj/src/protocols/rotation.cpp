#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "darkpassage/measures.hpp"
#include "darkpassage/protocols.hpp"

namespace darkpassage {

namespace {

QubitState ancilla(Axis axis) { return axis == Axis::Z ? QubitState::up() : QubitState::up_x(); }

struct GateRun {
  Trajectory trajectory;  // run from psi
  Matrix2 map;            // ancilla-projected 2x2 map on the computational basis
  double fidelity;        // |<ancillas (x) R psi | out>|
};

/// Propagates psi and both basis inputs through `schedule`, with `ancillas`
/// occupying spins 1..N-1 at the start and spins 0..N-2 at the end.
GateRun run_gate(const Schedule& schedule, const std::vector<QubitState>& ancillas, const QubitState& psi,
                 const Matrix2& target, const IntegratorOptions& opt) {
  auto input = [&](const QubitState& q) {
    std::vector<QubitState> spins{q};
    spins.insert(spins.end(), ancillas.begin(), ancillas.end());
    return QuantumState::product(spins);
  };
  GateRun g{propagate(schedule, input(psi), opt), Matrix2::Zero(), 0.0};
  g.map.col(0) = project_onto_prefix(propagate_final(schedule, input(QubitState::up()), opt), ancillas);
  g.map.col(1) = project_onto_prefix(propagate_final(schedule, input(QubitState::down()), opt), ancillas);

  std::vector<QubitState> out(ancillas);
  out.push_back(QubitState::from_vector(target * psi.vector()));
  g.fidelity = pure_fidelity(g.trajectory.final_state(), QuantumState::product(out));
  return g;
}

void fill_gate_report(RunReport& report, GateRun g, const Matrix2& target, const std::vector<QubitState>& ancillas) {
  report.fidelity = g.fidelity;
  const Vector2 q = project_onto_prefix(g.trajectory.final_state(), ancillas);
  if (q.norm() > 0.0) report.output_qubit = QubitState::from_vector(q);
  report.add("fidelity", g.fidelity);
  report.add("gate_fidelity", gate_fidelity(target, g.map));
  report.add("output_weight", q.squaredNorm());
  detail::attach_trajectory(report, std::move(g.trajectory));
}

}  // namespace

RunReport run_rotation_segment(Axis axis, double phase, const QubitState& psi, const TransferParams& params) {
  if (!std::isfinite(phase)) throw ValidationError("rotation: phase must be finite");
  if (params.backward) throw ValidationError("rotation: backward passage is not supported");
  detail::Stopwatch clock;
  RunReport report;
  report.experiment = "rotate_segment";
  PassagePlan plan = counterintuitive_schedule(
      params, 3, {{BondRole::Pump, 0.0, axis}, {BondRole::Stokes, phase, axis}}, Backend::FullSpace);
  report.warnings = plan.warnings;

  const Matrix2 target = axis == Axis::Z ? rz(phase + kPi) : rx(phase + kPi);
  const std::vector<QubitState> ancillas(2, ancilla(axis));
  GateRun g = run_gate(plan.schedule, ancillas, psi, target, params.integrator());
  detail::attach_margin(report, plan.pump, plan.stokes, plan.schedule.t_start(), plan.schedule.t_end());
  fill_gate_report(report, std::move(g), target, ancillas);
  report.add("phase", phase);
  report.add("axis_x", axis == Axis::X ? 1.0 : 0.0);
  report.wall_time_s = clock.seconds();
  return report;
}

RunReport run_rotation_zxz(const RotationSpec& spec, const QubitState& psi) {
  const TransferParams& p = spec.segment;
  p.validate();
  for (double a : {spec.alpha, spec.beta, spec.gamma})
    if (!std::isfinite(a)) throw ValidationError("rotation: angles must be finite");
  if (p.backward) throw ValidationError("rotation: backward passage is not supported");
  if (p.delay_value() <= 0.0) throw ValidationError("rotation: delay must be > 0");
  const double gap = spec.gap_value();
  if (!std::isfinite(gap) || gap < 4.0 * p.sigma * (1.0 - 1e-12))
    throw ValidationError("rotation: segments must be separated by at least 4 sigma");

  detail::Stopwatch clock;
  RunReport report;
  report.experiment = "rotate_zxz";

  const Axis axes[3] = {Axis::Z, Axis::X, Axis::Z};
  const double phases[3] = {spec.alpha - kPi, spec.beta - kPi, spec.gamma - kPi};
  const double period = p.delay_value() + gap;
  const double lo = p.t0 - p.pad_value();
  const double hi = p.t0 + 2.0 * period + p.delay_value() + p.pad_value();

  std::vector<BondSpec> bonds;
  std::vector<PulsePair> pairs;
  for (int k = 0; k < 3; ++k) {
    const double stokes_center = p.t0 + k * period + p.stokes_shift;
    const double pump_center = p.t0 + k * period + p.delay_value() + p.pump_shift;
    for (double c : {stokes_center, pump_center})
      if (c - lo < 4.0 * p.sigma * (1.0 - 1e-12) || hi - c < 4.0 * p.sigma * (1.0 - 1e-12))
        throw ValidationError("window must extend at least 4 sigma beyond every pulse centre");
    const PulseShape K = PulseShape::gaussian(p.G * p.pump_scale, p.sigma, pump_center);
    const PulseShape L = PulseShape::gaussian(p.G * p.stokes_scale, p.sigma, stokes_center);
    bonds.emplace_back(K, 0.0, axes[k]);
    bonds.emplace_back(L, phases[k], axes[k]);
    pairs.push_back({K, L});
  }
  const ChainSpec chain(7, std::move(bonds));
  const Schedule schedule = full_space_schedule(chain, lo, hi, p.stride_value());

  const Matrix2 target = rz(spec.gamma) * rx(spec.beta) * rz(spec.alpha);
  const std::vector<QubitState> ancillas{QubitState::up(),   QubitState::up(), QubitState::up_x(),
                                         QubitState::up_x(), QubitState::up(), QubitState::up()};
  GateRun g = run_gate(schedule, ancillas, psi, target, p.integrator());

  for (int k = 0; k < 3; ++k) {
    const double a = std::max(lo, p.t0 + k * period - 0.5 * gap);
    const double b = std::min(hi, p.t0 + k * period + p.delay_value() + 0.5 * gap);
    detail::attach_margin(report, pairs[k].pump, pairs[k].stokes, a, b);
  }
  fill_gate_report(report, std::move(g), target, ancillas);
  report.add("alpha", spec.alpha);
  report.add("beta", spec.beta);
  report.add("gamma", spec.gamma);
  report.wall_time_s = clock.seconds();
  return report;
}

}  // namespace darkpassage
