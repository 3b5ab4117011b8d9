#include "darkpassage/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "darkpassage/hamiltonian.hpp"

namespace darkpassage {

double pure_fidelity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ValidationError("fidelity: dimension mismatch");
  return std::min(1.0, std::abs(a.dot(b)));
}

double pure_fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.representation() != b.representation()) throw ValidationError("fidelity: representation mismatch");
  return pure_fidelity(a.amplitudes(), b.amplitudes());
}

void validate_density_matrix(const Matrix2& rho, double tol) {
  if ((rho - rho.adjoint()).norm() > tol) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol) throw ValidationError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix2> es(rho);
  if (es.eigenvalues().minCoeff() < -tol) throw ValidationError("density matrix is not positive semidefinite");
}

double corrected_mixed_fidelity(const QubitState& psi, const Matrix2& rho) {
  validate_density_matrix(rho);
  const Vector2 zpsi = pauli_z() * psi.vector();
  const double v = std::real(zpsi.dot(rho * zpsi));
  return std::sqrt(std::clamp(v, 0.0, 1.0));
}

namespace {

void require_full(const QuantumState& s) {
  if (s.representation() != Representation::FullSpace)
    throw ValidationError("partial trace needs a full-space state");
}

}  // namespace

Matrix2 partial_trace_to_last(const QuantumState& state) {
  require_full(state);
  // last spin is bit 0
  const Vector& a = state.amplitudes();
  Matrix2 rho = Matrix2::Zero();
  for (Eigen::Index r = 0; r < a.size(); r += 2) {
    const cplx u = a(r), d = a(r + 1);
    rho(0, 0) += std::norm(u);
    rho(1, 1) += std::norm(d);
    rho(0, 1) += u * std::conj(d);
  }
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

Matrix2 partial_trace_to_last(const MixedState& state) {
  Matrix2 rho = Matrix2::Zero();
  for (const auto& b : state.branches()) rho += b.weight * partial_trace_to_last(b.state);
  return rho;
}

Vector2 project_onto_prefix(const QuantumState& state, std::span<const QubitState> prefix) {
  require_full(state);
  if (prefix.size() + 1 != state.n_spins()) throw ValidationError("prefix must cover all spins but the last");
  const QuantumState bra = QuantumState::product(prefix);
  const Vector& p = bra.amplitudes();
  const Vector& a = state.amplitudes();
  Vector2 out = Vector2::Zero();
  for (Eigen::Index r = 0; r < p.size(); ++r) {
    const cplx w = std::conj(p(r));
    if (w == 0.0) continue;
    out(0) += w * a(2 * r);
    out(1) += w * a(2 * r + 1);
  }
  return out;
}

double gate_fidelity(const Matrix2& target, const Matrix2& map) {
  return std::abs((target.adjoint() * map).trace()) / 2.0;
}

std::vector<double> down_population_trace(const Trajectory& trajectory, std::size_t site) {
  std::vector<double> out;
  out.reserve(trajectory.populations.size());
  for (const auto& row : trajectory.populations) {
    if (site >= row.size()) throw ValidationError("population trace: site " + std::to_string(site) + " out of range");
    out.push_back(row[site]);
  }
  return out;
}

double thermal_polarization(double x) {
  if (std::isnan(x)) throw ValidationError("thermal_polarization: x is NaN");
  // 1/(1+e^x) written to stay accurate for large |x|
  return x >= 0.0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
}

double non_symmetric_population(const QuantumState& state, SpinRange group) {
  require_full(state);
  const std::size_t n = state.n_spins();
  if (group.last >= n || group.first > group.last) throw ValidationError("group out of range");
  std::uint64_t gmask = 0;
  for (std::size_t s = group.first; s <= group.last; ++s) gmask |= std::uint64_t{1} << spin_bit(n, s);
  const std::size_t m = group.size();

  // symmetric weight = sum over (outside config, k) of |sum of amplitudes with k downs|^2 / C(m, k)
  const Vector& a = state.amplitudes();
  std::vector<double> binom(m + 1, 1.0);
  for (std::size_t k = 1; k <= m; ++k) binom[k] = binom[k - 1] * static_cast<double>(m - k + 1) / static_cast<double>(k);

  double total = 0.0, sym = 0.0;
  std::vector<cplx> sums(m + 1);
  for (std::uint64_t outside = 0; outside < static_cast<std::uint64_t>(a.size()); ++outside) {
    if (outside & gmask) continue;
    std::fill(sums.begin(), sums.end(), cplx{});
    // enumerate subsets of gmask
    std::uint64_t sub = 0;
    do {
      const cplx v = a(static_cast<Eigen::Index>(outside | sub));
      total += std::norm(v);
      sums[static_cast<std::size_t>(std::popcount(sub))] += v;
      sub = (sub - gmask) & gmask;
    } while (sub != 0);
    for (std::size_t k = 0; k <= m; ++k) sym += std::norm(sums[k]) / binom[k];
  }
  return std::max(0.0, total - sym);
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return s * h / 3.0;
}

}  // namespace darkpassage
