#pragma once

// Data-parallel inner loops used by the propagator. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant chosen at
// runtime. DARKPASSAGE_KERNELS=scalar|avx2 overrides the automatic choice.

#include <span>

#include "darkpassage/types.hpp"

namespace darkpassage::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);

/// Kernel set bound to one instruction set.
class KernelSet {
 public:
  explicit KernelSet(Isa isa);
  Isa isa() const { return isa_; }

  /// y += a x
  void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) const;
  double norm_sq(std::span<const cplx> x) const;
  /// sum conj(x_i) y_i
  cplx dot(std::span<const cplx> x, std::span<const cplx> y) const;
  /// y += scale * A x for square column-major A.
  void gemv_accumulate(const Matrix& a, cplx scale, std::span<const cplx> x, std::span<cplx> y) const;
  /// y += scale * (g acting on the two given bit positions) x, g in basis
  /// 2 * b_a + b_b. x.size() must be a power of two covering both bits.
  void pair_accumulate(unsigned bit_a, unsigned bit_b, const Matrix4& g, cplx scale, std::span<const cplx> x,
                       std::span<cplx> y) const;

 private:
  Isa isa_;
  const void* table_;
};

const KernelSet& active();
/// Throws ValidationError if `isa` is not available on this machine/build.
void select(Isa isa);

}  // namespace darkpassage::kernels
