#pragma once

#include <array>
#include <string>
#include <vector>
#include <cstddef>

#include "darkpassage/types.hpp"

namespace darkpassage {

/// Zero-energy eigenvector (1/F)[L, 0, -K e^{i alpha}] of the three-level
/// Hamiltonian, F = sqrt(K^2 + L^2).
Vector3 dark_state_analytic(double K, double L, double alpha = 0.0);

struct Eigenpair {
  Vector3 vector;
  double value;
};

/// Bright eigenpairs (1/(sqrt2 F))[K, +-F, L] with eigenvalues +-F; element 0 is a+.
std::array<Eigenpair, 2> bright_states_analytic(double K, double L);

/// Thrown when no eigenvalue lies within the null tolerance.
class NoNullSpaceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Thrown when the null space is more than one-dimensional; carries an
/// orthonormal basis of it (one column per vector).
class DegenerateNullSpaceError : public NumericalError {
 public:
  DegenerateNullSpaceError(const std::string& what, Matrix basis)
      : NumericalError(what), basis_(std::move(basis)) {}
  const Matrix& basis() const { return basis_; }
  std::size_t dimension() const { return static_cast<std::size_t>(basis_.cols()); }

 private:
  Matrix basis_;
};

/// Null vector of a Hermitian matrix via dense diagonalisation. Eigenvalues
/// with |lambda| <= 1e-9 ||H|| count as zero. The phase is fixed so the first
/// non-negligible component is real and positive.
Vector dark_state_numeric(const Matrix& h);

/// Rotates `v` so its first non-negligible component is real positive.
void fix_phase(Vector& v);

/// Alternating-scheme dark state on 2n+1 sites (odd bonds K, even bonds L):
/// site 2j (0-based) carries (-1)^j L^{n-j} K^j, odd sites are empty. Normalised.
Vector astirap_dark_state(std::size_t n, double K, double L);

/// Straddling-scheme dark state on N sites with bonds (K, M, ..., M, L).
/// Normalised; see sstirap_bonds for the chain it annihilates.
Vector sstirap_dark_state(std::size_t n_sites, double K, double L, double M);

/// Tridiagonal one-down Hamiltonian with real bond strengths `bonds`.
Matrix tridiagonal_chain(const std::vector<double>& bonds);

}  // namespace darkpassage
