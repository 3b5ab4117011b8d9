#pragma once

// Raw kernel signatures shared by the scalar and SIMD translation units.
// Complex arrays are interleaved (re, im) doubles. This header must stay
// free of std/Eigen templates: the AVX2 TU is compiled with -mavx2 and must
// not emit inline functions that the linker could pick for scalar callers.

#include <cstddef>

namespace darkpassage::kernels::detail {

struct Table {
  const char* name;
  // y += a * x
  void (*axpy)(std::size_t n, double ar, double ai, const double* x, double* y);
  // sum |x_i|^2
  double (*norm_sq)(std::size_t n, const double* x);
  // out = sum conj(x_i) y_i
  void (*dot)(std::size_t n, const double* x, const double* y, double* out);
  // y += s * A x, A column-major n x n
  void (*gemv_acc)(std::size_t n, const double* a, double sr, double si, const double* x, double* y);
  // y += s * (G on bits hi > lo) x, G row-major 4x4 in basis 2*b_hi + b_lo
  void (*pair_acc)(std::size_t dim, unsigned hi, unsigned lo, const double* g, double sr, double si,
                   const double* x, double* y);
};

extern const Table kScalarTable;
#if defined(DARKPASSAGE_HAVE_AVX2)
extern const Table kAvx2Table;
#endif

static inline std::size_t insert_zero_bit(std::size_t x, unsigned bit) {
  const std::size_t low = x & ((std::size_t{1} << bit) - 1);
  return ((x >> bit) << (bit + 1)) | low;
}

}  // namespace darkpassage::kernels::detail
