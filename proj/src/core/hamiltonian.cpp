#include "darkpassage/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "darkpassage/state.hpp"

namespace darkpassage {

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Matrix4 bond_operator(Axis axis, double phase) {
  const Matrix2 x = pauli_x(), y = pauli_y(), z = pauli_z();
  const double c = std::cos(phase), s = std::sin(phase);
  if (axis == Axis::Z) return 0.5 * (c * (kron(x, x) + kron(y, y)) + s * (kron(x, y) - kron(y, x)));
  return 0.5 * (c * (kron(y, y) + kron(z, z)) + s * (kron(y, z) - kron(z, y)));
}

std::vector<PairCoupling> expand_couplings(const ChainSpec& chain) {
  std::vector<PairCoupling> out;
  const auto& group = chain.collective_group();
  for (std::size_t b = 0; b < chain.bonds().size(); ++b) {
    const BondSpec& bond = chain.bond(b);
    const Matrix4 op = bond_operator(bond.axis(), bond.phase());
    if (group && group->contains(b) && group->contains(b + 1)) continue;  // zero by construction
    if (group && b + 1 == group->first) {
      const double w = 1.0 / std::sqrt(static_cast<double>(group->size()));
      for (std::size_t m = group->first; m <= group->last; ++m) out.push_back({b, m, b, w, op});
    } else if (group && b == group->last) {
      const double w = 1.0 / std::sqrt(static_cast<double>(group->size()));
      for (std::size_t m = group->first; m <= group->last; ++m) out.push_back({m, b + 1, b, w, op});
    } else {
      out.push_back({b, b + 1, b, 1.0, op});
    }
  }
  return out;
}

Matrix build_subspace_hamiltonian(const ChainSpec& chain, double t) {
  if (!chain.all_z()) throw ValidationError("one-down subspace Hamiltonian requires Z-axis bonds only");
  if (chain.collective_group()) throw ValidationError("one-down subspace Hamiltonian does not expand collective groups");
  const auto n = static_cast<Eigen::Index>(chain.n_spins());
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const BondSpec& bond = chain.bond(static_cast<std::size_t>(i));
    const cplx v = bond.pulse()(t) * std::polar(1.0, -bond.phase());
    h(i, i + 1) = v;
    h(i + 1, i) = std::conj(v);
  }
  return h;
}

void embed_pair(Matrix& out, std::size_t n_spins, std::size_t spin_a, std::size_t spin_b, const Matrix4& op,
                cplx scale) {
  const std::size_t dim = std::size_t{1} << n_spins;
  const std::size_t ma = std::size_t{1} << spin_bit(n_spins, spin_a);
  const std::size_t mb = std::size_t{1} << spin_bit(n_spins, spin_b);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & (ma | mb)) continue;
    const std::size_t idx[4] = {base, base | mb, base | ma, base | ma | mb};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        if (op(r, c) == cplx{}) continue;
        out(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c])) += scale * op(r, c);
      }
  }
}

Matrix build_full_hamiltonian(const ChainSpec& chain, double t, std::size_t max_spins) {
  if (chain.n_spins() > max_spins)
    throw ValidationError("full-space Hamiltonian: " + std::to_string(chain.n_spins()) + " spins exceeds cap of " +
                          std::to_string(max_spins));
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << chain.n_spins());
  Matrix h = Matrix::Zero(dim, dim);
  for (const PairCoupling& pc : expand_couplings(chain)) {
    const double j = chain.bond(pc.bond).pulse()(t) * pc.weight;
    if (j == 0.0) continue;
    embed_pair(h, chain.n_spins(), pc.spin_a, pc.spin_b, pc.op, j);
  }
  return h;
}

Matrix total_sz(std::size_t n_spins) {
  const std::size_t dim = std::size_t{1} << n_spins;
  Matrix sz = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const int downs = std::popcount(i);
    sz(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 0.5 * (static_cast<double>(n_spins) - 2.0 * downs);
  }
  return sz;
}

Matrix3 three_level_hamiltonian(double K, double L, double alpha) {
  Matrix3 h = Matrix3::Zero();
  h(0, 1) = K;
  h(1, 0) = K;
  h(1, 2) = L * std::polar(1.0, -alpha);
  h(2, 1) = L * std::polar(1.0, alpha);
  return h;
}

}  // namespace darkpassage
