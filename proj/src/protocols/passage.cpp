#include <algorithm>
#include <cmath>
#include <string>

#include "common.hpp"
#include "darkpassage/protocols.hpp"

namespace darkpassage {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

IntegratorOptions TransferParams::integrator() const {
  IntegratorOptions o;
  o.tolerance = tolerance;
  return o;
}

void TransferParams::validate() const {
  if (!finite_positive(G)) throw ValidationError("G must be > 0");
  if (!finite_positive(sigma)) throw ValidationError("sigma must be > 0");
  if (!std::isfinite(t0)) throw ValidationError("t0 must be finite");
  if (!std::isfinite(delay_value()) || delay_value() < 0.0)
    throw ValidationError("delay must be >= 0 (the Stokes pulse must not follow the pump)");
  if (!std::isfinite(pad_value()) || pad_value() < 4.0 * sigma * (1.0 - 1e-12))
    throw ValidationError("pad must be at least 4 sigma");
  if (!std::isfinite(M) || M < 0.0) throw ValidationError("M must be >= 0");
  if (straddle_ramp && !finite_positive(*straddle_ramp)) throw ValidationError("straddle ramp must be > 0");
  if (!finite_positive(tolerance)) throw ValidationError("tolerance must be > 0");
  if (!finite_positive(stride_value())) throw ValidationError("sample_stride must be > 0");
  if (!std::isfinite(pump_scale) || pump_scale < 0.0 || !std::isfinite(stokes_scale) || stokes_scale < 0.0)
    throw ValidationError("pulse scales must be >= 0");
  if (!std::isfinite(pump_shift) || !std::isfinite(stokes_shift)) throw ValidationError("pulse shifts must be finite");
}

double transfer_sign(std::size_t n_sites) {
  if (n_sites % 2 == 0) throw ValidationError("transfer_sign: chain length must be odd");
  return ((n_sites - 1) / 2) % 2 ? -1.0 : 1.0;
}

PassagePlan counterintuitive_schedule(const TransferParams& params, std::size_t n_spins,
                                      const std::vector<BondAssignment>& bonds, Backend backend,
                                      std::optional<SpinRange> group) {
  params.validate();
  if (bonds.size() + 1 != n_spins) throw ValidationError("schedule: need one assignment per bond");

  const double s = params.sigma;
  const double first = params.t0, second = params.t0 + params.delay_value();
  const double stokes_center = (params.backward ? second : first) + params.stokes_shift;
  const double pump_center = (params.backward ? first : second) + params.pump_shift;
  double lo = first - params.pad_value();
  double hi = second + params.pad_value();

  PulseShape pump = PulseShape::gaussian(params.G * params.pump_scale, s, pump_center);
  PulseShape stokes = PulseShape::gaussian(params.G * params.stokes_scale, s, stokes_center);
  std::vector<std::string> warnings;

  const bool straddled = std::any_of(bonds.begin(), bonds.end(), [](const auto& b) { return b.role == BondRole::Straddle; });
  PulseShape straddle;
  if (straddled) {
    if (!(params.M > 0.0)) throw ValidationError("straddle bonds need M > 0");
    const double sr = params.straddle_ramp.value_or(s);
    const double t_on = std::min(pump_center, stokes_center) - 4.0 * s - 4.0 * sr;
    const double t_off = std::max(pump_center, stokes_center) + 4.0 * s + 4.0 * sr;
    straddle = PulseShape::ramped_constant(params.M, t_on, t_off, sr);
    lo = std::min(lo, t_on - 4.0 * sr);
    hi = std::max(hi, t_off + 4.0 * sr);
    if (params.M < 5.0 * params.G)
      warnings.push_back("M < 5 G: interior populations are only weakly suppressed");
  }

  for (double c : {pump_center, stokes_center})
    if (c - lo < 4.0 * s * (1.0 - 1e-12) || hi - c < 4.0 * s * (1.0 - 1e-12))
      throw ValidationError("window must extend at least 4 sigma beyond every pulse centre");

  const bool counterintuitive = params.delay_value() > 0.0;
  if (!counterintuitive) warnings.push_back("delay = 0: pump and Stokes coincide, sequence is not counter-intuitive");

  std::vector<BondSpec> specs;
  specs.reserve(bonds.size());
  for (const auto& b : bonds) {
    PulseShape p;
    switch (b.role) {
      case BondRole::Pump: p = pump; break;
      case BondRole::Stokes: p = stokes; break;
      case BondRole::Straddle: p = straddle; break;
      case BondRole::Off: break;
    }
    specs.emplace_back(p, b.phase, b.axis);
  }
  ChainSpec chain(n_spins, std::move(specs), group);
  Schedule schedule = backend == Backend::FullSpace
                          ? full_space_schedule(chain, lo, hi, params.stride_value())
                          : subspace_schedule(chain, lo, hi, params.stride_value());
  return PassagePlan{std::move(chain), std::move(schedule), pump, stokes, std::move(warnings), counterintuitive};
}

double RunReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw ValidationError("report has no metric '" + name + "'");
}

namespace detail {

void attach_trajectory(RunReport& report, Trajectory trajectory) {
  report.max_down_population = trajectory.max_populations;
  report.norm_drift = std::max(report.norm_drift, trajectory.norm_drift);
  report.trajectory = std::move(trajectory);
}

Trajectory embed_single_excitation(Trajectory tr, const QubitState& psi) {
  const double a2 = std::norm(psi.alpha()), b2 = std::norm(psi.beta());
  for (auto& row : tr.populations)
    for (double& v : row) v *= b2;
  for (double& v : tr.max_populations) v *= b2;
  for (double& n : tr.norms) n = std::sqrt(a2 + b2 * n * n);
  tr.norm_drift *= b2;
  return tr;
}

double qubit_transfer_fidelity(const QubitState& psi, const Vector& c, cplx target_factor) {
  const double a2 = std::norm(psi.alpha()), b2 = std::norm(psi.beta());
  const cplx overlap = a2 + b2 * std::conj(target_factor) * c(c.size() - 1);
  return std::min(1.0, std::abs(overlap));
}

QubitState transferred_qubit(const QubitState& psi, const Vector& c) {
  const cplx b = psi.beta() * c(c.size() - 1);
  if (std::abs(psi.alpha()) == 0.0 && std::abs(b) == 0.0) return QubitState::up();
  return QubitState(psi.alpha(), b);
}

void attach_margin(RunReport& report, const PulseShape& pump, const PulseShape& stokes, double t0, double t1) {
  const auto rep = adiabaticity_report(pump, stokes, t0, t1, kMarginSamples);
  report.adiabaticity_margin = std::max(report.adiabaticity_margin, rep.max_margin);
  report.pulse_area = report.pulse_area == 0.0 ? rep.pulse_area : std::min(report.pulse_area, rep.pulse_area);
  report.pulses.push_back({pump, stokes});
}

}  // namespace detail

Matrix2 rz(double chi) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, chi);
  return m;
}

Matrix2 hadamard() {
  Matrix2 h;
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return h;
}

Matrix2 rx(double chi) { return hadamard() * rz(chi) * hadamard(); }

}  // namespace darkpassage
