#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "darkpassage/types.hpp"

namespace darkpassage {

/// Basis in which amplitudes are expressed.
///  - SingleExcitation: index i = "spin i is the single down spin" (dim N).
///  - FullSpace: index bits, spin i <-> bit (N-1-i), bit set = spin down (dim 2^N).
///  - AdiabaticBasis: components along {a+, a0, a-} of a three-spin passage.
enum class Representation { SingleExcitation, FullSpace, AdiabaticBasis };

/// Single-qubit state alpha|up> + beta|down>, normalised on construction.
class QubitState {
 public:
  QubitState() : QubitState(1.0, 0.0) {}
  QubitState(cplx alpha, cplx beta);

  static QubitState up() { return {1.0, 0.0}; }
  static QubitState down() { return {0.0, 1.0}; }
  /// +1 eigenstate of Pauli X.
  static QubitState up_x();
  static QubitState from_vector(const Vector2& v);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  Vector2 vector() const { return Vector2{alpha_, beta_}; }

 private:
  cplx alpha_;
  cplx beta_;
};

class QuantumState {
 public:
  /// Normalises `amplitudes`; throws ValidationError for zero vectors or
  /// dimension mismatches.
  QuantumState(Representation rep, std::size_t n_spins, Vector amplitudes);

  /// Wraps amplitudes as-is. Used by propagation, which audits the norm
  /// instead of restoring it.
  static QuantumState unnormalized(Representation rep, std::size_t n_spins, Vector amplitudes);

  static QuantumState site_excitation(std::size_t n_spins, std::size_t site);
  static QuantumState basis_state(std::size_t n_spins, std::uint64_t bits);
  /// Tensor product of single-spin states, spin 0 first.
  static QuantumState product(std::span<const QubitState> spins);

  Representation representation() const { return rep_; }
  std::size_t n_spins() const { return n_spins_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

  /// Probability that `site` is down. For AdiabaticBasis this is the
  /// population of component `site`.
  double down_population(std::size_t site) const;
  std::size_t site_count() const;

  /// Human-readable basis label, e.g. "100" for |down up up>.
  std::string label(std::size_t index) const;

 private:
  QuantumState(Representation rep, std::size_t n_spins, Vector amplitudes, bool normalise);
  Representation rep_;
  std::size_t n_spins_;
  Vector amps_;
};

std::size_t expected_dim(Representation rep, std::size_t n_spins);

/// Bit position of spin `site` inside a full-space index.
inline unsigned spin_bit(std::size_t n_spins, std::size_t site) {
  return static_cast<unsigned>(n_spins - 1 - site);
}

}  // namespace darkpassage
