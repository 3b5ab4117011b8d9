#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "darkpassage/chain.hpp"
#include "darkpassage/state.hpp"
#include "darkpassage/types.hpp"

namespace darkpassage {

/// Two-spin operator acting on two bit positions of a full-space vector.
struct PairOperator {
  unsigned bit_a;
  unsigned bit_b;
  Matrix4 op;
};

/// Arbitrary t -> H(t) callback; its coefficient is ignored.
using MatrixProvider = std::function<Matrix(double)>;

/// H(t) = sum_k coefficient_k(t) * operator_k.
struct HamiltonianTerm {
  std::function<double(double)> coefficient;
  std::variant<Matrix, PairOperator, MatrixProvider> op;
};

/// Time window plus the Hamiltonian driving it.
class Schedule {
 public:
  Schedule(double t_start, double t_end, std::size_t dim, std::vector<HamiltonianTerm> terms, double sample_stride,
           Representation rep, std::size_t n_spins);

  static Schedule from_provider(double t_start, double t_end, std::size_t dim, MatrixProvider provider,
                                double sample_stride, Representation rep, std::size_t n_spins);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t dim() const { return dim_; }
  double sample_stride() const { return stride_; }
  Representation representation() const { return rep_; }
  std::size_t n_spins() const { return n_spins_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  /// out += scale * H(t) psi
  void apply(double t, std::span<const cplx> psi, std::span<cplx> out, cplx scale) const;
  Matrix hamiltonian(double t) const;

  /// Same Hamiltonian on a sub-window.
  Schedule window(double t_start, double t_end) const;
  Schedule with_stride(double stride) const;

 private:
  double t_start_, t_end_;
  std::size_t dim_;
  std::vector<HamiltonianTerm> terms_;
  double stride_;
  Representation rep_;
  std::size_t n_spins_;
};

/// Full-space (2^N) schedule for a chain, collective groups expanded.
Schedule full_space_schedule(const ChainSpec& chain, double t_start, double t_end, double sample_stride,
                             std::size_t max_spins = 12);

/// One-down sector schedule (Z-axis chains without collective groups).
Schedule subspace_schedule(const ChainSpec& chain, double t_start, double t_end, double sample_stride);

}  // namespace darkpassage
