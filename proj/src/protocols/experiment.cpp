#include "darkpassage/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "darkpassage/dark_states.hpp"
#include "darkpassage/hamiltonian.hpp"

namespace darkpassage {

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::Transfer3, "transfer3"},         {ExperimentKind::Astirap, "astirap"},
    {ExperimentKind::Sstirap, "sstirap"},             {ExperimentKind::Collective, "collective"},
    {ExperimentKind::Polarization, "polarization"},   {ExperimentKind::RotateSegment, "rotate_segment"},
    {ExperimentKind::RotateZxz, "rotate_zxz"},        {ExperimentKind::Darkstate, "darkstate"},
};

std::size_t as_count(const std::string& name, double v) {
  if (!std::isfinite(v) || v < 0.0 || v != std::floor(v) || v > 1e6)
    throw ValidationError(name + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

RunReport run_darkstate(const ExperimentParams& e) {
  RunReport r;
  r.experiment = "darkstate";
  Vector v;
  Matrix h;
  if (e.darkstate_alternating) {
    v = astirap_dark_state(e.n, e.K, e.L);
    std::vector<double> bonds;
    for (std::size_t b = 0; b < 2 * e.n; ++b) bonds.push_back(b % 2 == 0 ? e.K : e.L);
    h = tridiagonal_chain(bonds);
  } else if (e.darkstate_straddle) {
    v = sstirap_dark_state(e.N, e.K, e.L, e.transfer.M);
    std::vector<double> bonds(e.N - 1, e.transfer.M);
    bonds.front() = e.K;
    bonds.back() = e.L;
    h = tridiagonal_chain(bonds);
  } else {
    v = dark_state_analytic(e.K, e.L, e.alpha);
    h = three_level_hamiltonian(e.K, e.L, e.alpha);
  }
  r.fidelity = 1.0;
  r.add("residual", (h * v).norm());
  r.add("dimension", static_cast<double>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    r.add("component_" + std::to_string(i + 1) + "_re", v(i).real());
    r.add("component_" + std::to_string(i + 1) + "_im", v(i).imag());
  }
  return r;
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  throw ValidationError("unknown experiment '" + name + "'");
}

void validate_experiment(const ExperimentParams& e) {
  if (e.kind == ExperimentKind::Darkstate) {
    if (!std::isfinite(e.K) || !std::isfinite(e.L) || !std::isfinite(e.alpha))
      throw ValidationError("darkstate: K, L and alpha must be finite");
    if (e.K == 0.0 && e.L == 0.0) throw ValidationError("darkstate: K and L cannot both vanish");
    if (e.darkstate_alternating && e.n == 0) throw ValidationError("darkstate: n must be >= 1");
    if (e.darkstate_straddle && (e.N < 5 || e.N % 2 == 0)) throw ValidationError("darkstate: N must be odd and >= 5");
    if (e.darkstate_straddle && !(e.transfer.M > 0.0)) throw ValidationError("darkstate: M must be > 0");
    return;
  }
  e.transfer.validate();
  switch (e.kind) {
    case ExperimentKind::Astirap:
      if (e.n == 0) throw ValidationError("astirap: n must be >= 1");
      if (2 * e.n + 1 > 25) throw ValidationError("astirap: n too large");
      break;
    case ExperimentKind::Sstirap:
      if (e.N < 5 || e.N % 2 == 0) throw ValidationError("sstirap: N must be odd and >= 5");
      if (!(e.transfer.M > 0.0)) throw ValidationError("sstirap: M must be > 0");
      break;
    case ExperimentKind::Collective:
      if (e.N < 4) throw ValidationError("collective: N must be >= 4");
      if (e.N > kDefaultFullSpaceCap) throw ValidationError("collective: N exceeds the full-space cap");
      break;
    case ExperimentKind::Polarization:
      if (!(e.p >= 0.0 && e.p <= 0.5)) throw ValidationError("polarization: p must lie in [0, 1/2]");
      break;
    case ExperimentKind::RotateSegment:
      if (!std::isfinite(e.phi)) throw ValidationError("rotate_segment: phi must be finite");
      break;
    case ExperimentKind::RotateZxz:
      if (!std::isfinite(e.alpha) || !std::isfinite(e.beta) || !std::isfinite(e.gamma))
        throw ValidationError("rotate_zxz: angles must be finite");
      if (e.segment_gap && !(*e.segment_gap >= 4.0 * e.transfer.sigma))
        throw ValidationError("rotate_zxz: segment_gap must be at least 4 sigma");
      break;
    default:
      break;
  }
  if (e.transfer.backward && e.kind != ExperimentKind::Transfer3)
    throw ValidationError("backward passage is only available for transfer3");
}

RunReport run_experiment(const ExperimentParams& e) {
  validate_experiment(e);
  switch (e.kind) {
    case ExperimentKind::Transfer3:
      return run_transfer_3spin(e.qubit, e.transfer);
    case ExperimentKind::Astirap:
      return run_astirap(e.n, e.qubit, e.transfer);
    case ExperimentKind::Sstirap:
      return run_sstirap(e.N, e.qubit, e.transfer);
    case ExperimentKind::Collective:
      return run_collective_transfer(e.N, e.qubit, e.transfer);
    case ExperimentKind::Polarization:
      return run_imperfect_polarization(e.qubit, e.p, e.transfer).run;
    case ExperimentKind::RotateSegment:
      return run_rotation_segment(e.axis, e.phi, e.qubit, e.transfer);
    case ExperimentKind::RotateZxz: {
      RotationSpec spec;
      spec.alpha = e.alpha;
      spec.beta = e.beta;
      spec.gamma = e.gamma;
      spec.segment = e.transfer;
      spec.segment_gap = e.segment_gap;
      return run_rotation_zxz(spec, e.qubit);
    }
    case ExperimentKind::Darkstate:
      return run_darkstate(e);
  }
  throw ValidationError("unknown experiment");
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names{"G",     "sigma", "delay", "pad",       "M",        "n",
                                              "N",     "p",     "phi",   "alpha",     "beta",     "gamma",
                                              "K",     "L",     "tolerance", "sample_stride", "segment_gap",
                                              "pump_scale", "stokes_scale", "pump_shift", "stokes_shift",
                                              "Gsigma", "beta_sq"};
  return names;
}

void apply_parameter(ExperimentParams& e, const std::string& name, double v) {
  TransferParams& t = e.transfer;
  if (!std::isfinite(v)) throw ValidationError("parameter '" + name + "' must be finite");
  if (name == "G") t.G = v;
  else if (name == "sigma") t.sigma = v;
  else if (name == "delay") t.delay = v;
  else if (name == "pad") t.pad = v;
  else if (name == "M") t.M = v;
  else if (name == "n") e.n = as_count(name, v);
  else if (name == "N") e.N = as_count(name, v);
  else if (name == "p") e.p = v;
  else if (name == "phi") e.phi = v;
  else if (name == "alpha") e.alpha = v;
  else if (name == "beta") e.beta = v;
  else if (name == "gamma") e.gamma = v;
  else if (name == "K") e.K = v;
  else if (name == "L") e.L = v;
  else if (name == "tolerance") t.tolerance = v;
  else if (name == "sample_stride") t.sample_stride = v;
  else if (name == "segment_gap") e.segment_gap = v;
  else if (name == "pump_scale") t.pump_scale = v;
  else if (name == "stokes_scale") t.stokes_scale = v;
  else if (name == "pump_shift") t.pump_shift = v;
  else if (name == "stokes_shift") t.stokes_shift = v;
  else if (name == "Gsigma") {
    if (!(v > 0.0)) throw ValidationError("Gsigma must be > 0");
    t.G = v / t.sigma;
  } else if (name == "beta_sq") {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("beta_sq must lie in [0, 1]");
    e.qubit = QubitState(std::sqrt(1.0 - v), std::sqrt(v));
  } else {
    throw ValidationError("unknown sweep parameter '" + name + "'");
  }
}

NamedValues report_scalars(const RunReport& r) {
  NamedValues out;
  out.emplace_back("fidelity", r.fidelity);
  out.emplace_back("infidelity", 1.0 - r.fidelity);
  out.emplace_back("adiabaticity_margin", r.adiabaticity_margin);
  out.emplace_back("pulse_area", r.pulse_area);
  out.emplace_back("norm_drift", r.norm_drift);
  if (r.output_qubit) {
    out.emplace_back("out_alpha_re", r.output_qubit->alpha().real());
    out.emplace_back("out_alpha_im", r.output_qubit->alpha().imag());
    out.emplace_back("out_beta_re", r.output_qubit->beta().real());
    out.emplace_back("out_beta_im", r.output_qubit->beta().imag());
  }
  for (std::size_t i = 0; i < r.max_down_population.size(); ++i)
    out.emplace_back("max_down_site_" + std::to_string(i + 1), r.max_down_population[i]);
  for (const auto& [k, v] : r.metrics)
    if (k != "fidelity" && k != "infidelity") out.emplace_back(k, v);
  return out;
}

SweepTable run_experiment_sweep(const ExperimentParams& base, const SweepGrid& grid, std::size_t threads) {
  grid.validate();
  const auto& known = sweepable_parameters();
  for (const auto& a : grid.axes)
    if (std::find(known.begin(), known.end(), a.name) == known.end())
      throw ValidationError("unknown sweep axis '" + a.name + "'");
  SweepRunner runner = [&](const std::vector<double>& point) {
    ExperimentParams e = base;
    std::optional<double> gsigma;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (grid.axes[i].name == "Gsigma") gsigma = point[i];
      else apply_parameter(e, grid.axes[i].name, point[i]);
    }
    if (gsigma) apply_parameter(e, "Gsigma", *gsigma);
    RunReport r = run_experiment(e);
    r.trajectory.reset();
    return report_scalars(r);
  };
  return run_sweep(grid, runner, threads);
}

}  // namespace darkpassage
