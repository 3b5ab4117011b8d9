#pragma once

#include <cstddef>
#include <vector>

#include "darkpassage/chain.hpp"
#include "darkpassage/types.hpp"

namespace darkpassage {

inline constexpr std::size_t kDefaultFullSpaceCap = 12;

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Two-spin operator of unit coupling in the basis |s_a s_b>, index 2*s_a + s_b
/// (0 = up, 1 = down).
///   Z family: (1/2)[cos(th)(XX + YY) + sin(th)(XY - YX)]
///   X family: (1/2)[cos(th)(YY + ZZ) + sin(th)(YZ - ZY)]
Matrix4 bond_operator(Axis axis, double phase);

/// One physical pair interaction produced by expanding a chain bond.
struct PairCoupling {
  std::size_t spin_a;  // spin_a < spin_b
  std::size_t spin_b;
  std::size_t bond;    // index into ChainSpec::bonds()
  double weight;       // 1, or 1/sqrt(m) for collective-group couplings
  Matrix4 op;          // bond_operator(axis, phase)
};

std::vector<PairCoupling> expand_couplings(const ChainSpec& chain);

/// Hamiltonian on the one-down sector: tridiagonal with entry
/// (i, i+1) = J_i(t) exp(-i theta_i). Z-axis chains without collective groups only.
Matrix build_subspace_hamiltonian(const ChainSpec& chain, double t);

/// Dense 2^N x 2^N Hamiltonian.
Matrix build_full_hamiltonian(const ChainSpec& chain, double t, std::size_t max_spins = kDefaultFullSpaceCap);

/// out += scale * (op acting on spins a, b), dense embedding.
void embed_pair(Matrix& out, std::size_t n_spins, std::size_t spin_a, std::size_t spin_b, const Matrix4& op,
                cplx scale = 1.0);

/// Total S_z = (1/2) sum_i Z_i, diagonal in the full-space basis.
Matrix total_sz(std::size_t n_spins);

/// The 3x3 matrix [[0,K,0],[K,0,L e^{-i alpha}],[0,L e^{i alpha},0]].
Matrix3 three_level_hamiltonian(double K, double L, double alpha = 0.0);

}  // namespace darkpassage
