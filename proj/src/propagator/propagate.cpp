#include "darkpassage/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "darkpassage/adiabatic.hpp"

namespace darkpassage {

std::vector<double> site_populations(Representation rep, std::size_t n_spins, const Vector& a) {
  switch (rep) {
    case Representation::SingleExcitation:
    case Representation::AdiabaticBasis: {
      std::vector<double> out(static_cast<std::size_t>(a.size()));
      for (Eigen::Index i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(i)] = std::norm(a(i));
      return out;
    }
    case Representation::FullSpace: {
      std::vector<double> out(n_spins, 0.0);
      for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
        const double p = std::norm(a(idx));
        if (p == 0.0) continue;
        const auto bits = static_cast<std::uint64_t>(idx);
        for (std::size_t s = 0; s < n_spins; ++s)
          if ((bits >> spin_bit(n_spins, s)) & 1U) out[s] += p;
      }
      return out;
    }
  }
  return {};
}

namespace {

void check_state(const Schedule& schedule, const QuantumState& psi0) {
  if (psi0.dim() != schedule.dim() || psi0.representation() != schedule.representation() ||
      psi0.n_spins() != schedule.n_spins())
    throw ValidationError("propagate: initial state does not match schedule (dim " + std::to_string(psi0.dim()) +
                          " vs " + std::to_string(schedule.dim()) + ")");
}

void raise_max(std::vector<double>& acc, const std::vector<double>& p) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], p[i]);
}

}  // namespace

Trajectory propagate(const Schedule& schedule, const QuantumState& psi0, const IntegratorOptions& options) {
  check_state(schedule, psi0);
  const Representation rep = schedule.representation();
  const std::size_t n = schedule.n_spins();
  const auto grid = sample_grid(schedule.t_start(), schedule.t_end(), schedule.sample_stride());

  Trajectory tr;
  tr.representation = rep;
  tr.n_spins = n;
  tr.times = grid;
  tr.states.reserve(grid.size());
  tr.norms.reserve(grid.size());
  tr.populations.reserve(grid.size());
  tr.max_populations = site_populations(rep, n, psi0.amplitudes());

  auto on_sample = [&](std::size_t, const Vector& psi) {
    tr.states.push_back(QuantumState::unnormalized(rep, n, psi));
    tr.norms.push_back(psi.norm());
    tr.populations.push_back(site_populations(rep, n, psi));
    raise_max(tr.max_populations, tr.populations.back());
  };
  auto on_step = [&](double, const Vector& psi) { raise_max(tr.max_populations, site_populations(rep, n, psi)); };

  IntegrationResult res = integrate(schedule, psi0.amplitudes(), options, grid, on_sample, on_step);
  tr.norm_drift = res.norm_drift;
  tr.stats = res.stats;
  return tr;
}

QuantumState propagate_final(const Schedule& schedule, const QuantumState& psi0, const IntegratorOptions& options) {
  check_state(schedule, psi0);
  IntegrationResult res = integrate(schedule, psi0.amplitudes(), options, {}, nullptr, nullptr);
  return QuantumState::unnormalized(schedule.representation(), schedule.n_spins(), std::move(res.final_state));
}

Matrix propagator_matrix(const Schedule& schedule, const IntegratorOptions& options, std::size_t max_dim) {
  const std::size_t d = schedule.dim();
  if (d > max_dim)
    throw ValidationError("propagator_matrix: dimension " + std::to_string(d) + " exceeds cap " +
                          std::to_string(max_dim));
  const auto di = static_cast<Eigen::Index>(d);
  Matrix u(di, di);
  Vector e = Vector::Zero(di);
  for (Eigen::Index j = 0; j < di; ++j) {
    e.setZero();
    e(j) = 1.0;
    u.col(j) = integrate(schedule, e, options, {}, nullptr, nullptr).final_state;
  }
  return u;
}

MixedState::MixedState(std::vector<Branch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("mixed state: no branches");
  double total = 0.0;
  for (const auto& b : branches_) {
    if (!(b.weight >= 0.0)) throw ValidationError("mixed state: negative branch weight");
    if (b.state.dim() != branches_.front().state.dim() ||
        b.state.representation() != branches_.front().state.representation() ||
        b.state.n_spins() != branches_.front().state.n_spins())
      throw ValidationError("mixed state: branch dimensions differ");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("mixed state: weights must sum to 1");
}

MixedState propagate_mixed(const Schedule& schedule, const MixedState& rho0, const IntegratorOptions& options) {
  std::vector<MixedState::Branch> out;
  out.reserve(rho0.branches().size());
  for (const auto& b : rho0.branches()) out.push_back({b.weight, propagate_final(schedule, b.state, options)});
  return MixedState(std::move(out));
}

namespace {

struct ThreeLevelPulses {
  PulseShape K;
  PulseShape L;
};

ThreeLevelPulses three_level_pulses(const ChainSpec& chain) {
  if (chain.n_spins() != 3 || !chain.all_z() || chain.collective_group())
    throw ValidationError("adiabatic frame: requires a three-spin Z-axis chain");
  if (chain.bond(0).phase() != 0.0 || chain.bond(1).phase() != 0.0)
    throw ValidationError("adiabatic frame: bond phases must be zero");
  return {chain.bond(0).pulse(), chain.bond(1).pulse()};
}

}  // namespace

Schedule adiabatic_frame_schedule(const ChainSpec& chain, double t_start, double t_end, double sample_stride) {
  const auto [K, L] = three_level_pulses(chain);
  constexpr int kChecks = 4000;
  double f_max = 0.0, f_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kChecks; ++i) {
    const double t = t_start + (t_end - t_start) * i / kChecks;
    const double f = std::hypot(K(t), L(t));
    f_max = std::max(f_max, f);
    f_min = std::min(f_min, f);
  }
  if (!(f_max > 0.0) || f_min < kFloorFraction * f_max)
    throw ValidationError("adiabatic frame: F falls below the floor on the window");

  std::vector<HamiltonianTerm> terms;
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(2, 2) = -1.0;
  terms.push_back({[K, L](double t) { return std::hypot(K(t), L(t)); }, diag});
  Matrix c = Matrix::Zero(3, 3);
  const cplx s = kI * kInvSqrt2;
  c(0, 1) = -s;
  c(1, 0) = s;
  c(1, 2) = s;
  c(2, 1) = -s;
  terms.push_back(
      {[K, L](double t) { return mixing_angle_rate(K(t), L(t), K.derivative(t), L.derivative(t)); }, c});
  return {t_start, t_end, 3, std::move(terms), sample_stride, Representation::AdiabaticBasis, 3};
}

Trajectory propagate_adiabatic_frame(const ChainSpec& chain, double t_start, double t_end, double sample_stride,
                                     const QuantumState& psi0_adiabatic, const IntegratorOptions& options) {
  return propagate(adiabatic_frame_schedule(chain, t_start, t_end, sample_stride), psi0_adiabatic, options);
}

Vector3 frame_to_lab(const ChainSpec& chain, double t, const Vector3& components) {
  const auto [K, L] = three_level_pulses(chain);
  return adiabatic_basis(K(t), L(t)) * components;
}

Vector3 lab_to_frame(const ChainSpec& chain, double t, const Vector3& amplitudes) {
  const auto [K, L] = three_level_pulses(chain);
  return adiabatic_basis(K(t), L(t)).adjoint() * amplitudes;
}

}  // namespace darkpassage
