#include "darkpassage/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "darkpassage/hamiltonian.hpp"
#include "darkpassage/kernels.hpp"

namespace darkpassage {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Schedule::Schedule(double t_start, double t_end, std::size_t dim, std::vector<HamiltonianTerm> terms,
                   double sample_stride, Representation rep, std::size_t n_spins)
    : t_start_(t_start), t_end_(t_end), dim_(dim), terms_(std::move(terms)), stride_(sample_stride), rep_(rep),
      n_spins_(n_spins) {
  if (!std::isfinite(t_start_) || !std::isfinite(t_end_) || !(t_start_ < t_end_))
    throw ValidationError("schedule: t_start must precede t_end");
  if (!(stride_ > 0.0) || !std::isfinite(stride_)) throw ValidationError("schedule: sample stride must be > 0");
  if (dim_ == 0) throw ValidationError("schedule: dimension must be positive");
  if (expected_dim(rep_, n_spins_) != dim_) throw ValidationError("schedule: dimension does not match representation");
  for (const auto& term : terms_) {
    if (!term.coefficient) throw ValidationError("schedule: term without coefficient");
    std::visit(overloaded{
                   [&](const Matrix& m) {
                     if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(m.cols()) != dim_)
                       throw ValidationError("schedule: dense term has wrong dimension");
                   },
                   [&](const PairOperator& p) {
                     if (p.bit_a == p.bit_b || (std::size_t{1} << std::max(p.bit_a, p.bit_b)) >= dim_)
                       throw ValidationError("schedule: pair term bits out of range");
                   },
                   [&](const MatrixProvider& f) {
                     if (!f) throw ValidationError("schedule: empty provider");
                   },
               },
               term.op);
  }
}

Schedule Schedule::from_provider(double t_start, double t_end, std::size_t dim, MatrixProvider provider,
                                 double sample_stride, Representation rep, std::size_t n_spins) {
  std::vector<HamiltonianTerm> terms;
  terms.push_back({[](double) { return 1.0; }, std::move(provider)});
  return {t_start, t_end, dim, std::move(terms), sample_stride, rep, n_spins};
}

void Schedule::apply(double t, std::span<const cplx> psi, std::span<cplx> out, cplx scale) const {
  const auto& k = kernels::active();
  for (const auto& term : terms_) {
    const double c = term.coefficient(t);
    if (c == 0.0) continue;
    std::visit(overloaded{
                   [&](const Matrix& m) { k.gemv_accumulate(m, scale * c, psi, out); },
                   [&](const PairOperator& p) { k.pair_accumulate(p.bit_a, p.bit_b, p.op, scale * c, psi, out); },
                   [&](const MatrixProvider& f) {
                     const Matrix m = f(t);
                     if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(m.cols()) != dim_)
                       throw ValidationError("schedule: provider changed dimension");
                     k.gemv_accumulate(m, scale * c, psi, out);
                   },
               },
               term.op);
  }
}

Matrix Schedule::hamiltonian(double t) const {
  const auto d = static_cast<Eigen::Index>(dim_);
  Matrix h = Matrix::Zero(d, d);
  Vector e = Vector::Zero(d);
  Vector col(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    e.setZero();
    e(j) = 1.0;
    col.setZero();
    apply(t, {e.data(), dim_}, {col.data(), dim_}, 1.0);
    h.col(j) = col;
  }
  return h;
}

Schedule Schedule::window(double t_start, double t_end) const {
  return {t_start, t_end, dim_, terms_, stride_, rep_, n_spins_};
}

Schedule Schedule::with_stride(double stride) const {
  return {t_start_, t_end_, dim_, terms_, stride, rep_, n_spins_};
}

Schedule full_space_schedule(const ChainSpec& chain, double t_start, double t_end, double sample_stride,
                             std::size_t max_spins) {
  if (chain.n_spins() > max_spins)
    throw ValidationError("full-space schedule: " + std::to_string(chain.n_spins()) + " spins exceeds cap of " +
                          std::to_string(max_spins));
  const std::size_t n = chain.n_spins();
  std::vector<HamiltonianTerm> terms;
  for (const PairCoupling& pc : expand_couplings(chain)) {
    const PulseShape& pulse = chain.bond(pc.bond).pulse();
    if (pulse.is_zero()) continue;
    const double w = pc.weight;
    terms.push_back({[pulse, w](double t) { return w * pulse(t); },
                     PairOperator{spin_bit(n, pc.spin_a), spin_bit(n, pc.spin_b), pc.op}});
  }
  return {t_start, t_end, std::size_t{1} << n, std::move(terms), sample_stride, Representation::FullSpace, n};
}

Schedule subspace_schedule(const ChainSpec& chain, double t_start, double t_end, double sample_stride) {
  if (!chain.all_z()) throw ValidationError("subspace schedule requires Z-axis bonds only");
  if (chain.collective_group()) throw ValidationError("subspace schedule does not expand collective groups");
  const auto n = static_cast<Eigen::Index>(chain.n_spins());
  std::vector<HamiltonianTerm> terms;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const BondSpec& bond = chain.bond(static_cast<std::size_t>(i));
    if (bond.pulse().is_zero()) continue;
    Matrix m = Matrix::Zero(n, n);
    const cplx v = std::polar(1.0, -bond.phase());
    m(i, i + 1) = v;
    m(i + 1, i) = std::conj(v);
    const PulseShape pulse = bond.pulse();
    terms.push_back({[pulse](double t) { return pulse(t); }, std::move(m)});
  }
  return {t_start, t_end, chain.n_spins(), std::move(terms), sample_stride, Representation::SingleExcitation,
          chain.n_spins()};
}

}  // namespace darkpassage
