// AVX2/FMA variants. Two complex doubles per __m256d: (re0, im0, re1, im1).

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace darkpassage::kernels::detail {

namespace {

// c * v for a complex c broadcast to both lanes.
inline __m256d cmul_bcast(__m256d cr, __m256d ci, __m256d v) {
  const __m256d vs = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(cr, v, _mm256_mul_pd(ci, vs));
}

void axpy(std::size_t n, double ar, double ai, const double* x, double* y) {
  const __m256d cr = _mm256_set1_pd(ar), ci = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(x + 2 * i);
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), cmul_bcast(cr, ci, v)));
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += ar * xr - ai * xi;
    y[2 * i + 1] += ar * xi + ai * xr;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq(std::size_t n, const double* x) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i), b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) s += x[i] * x[i];
  return s;
}

void dot(std::size_t n, const double* x, const double* y, double* out) {
  // p = x .* y -> (xr yr, xi yi); q = x .* swap(y) -> (xr yi, xi yr)
  __m256d p = _mm256_setzero_pd(), q = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(x + 2 * i), b = _mm256_loadu_pd(y + 2 * i);
    p = _mm256_fmadd_pd(a, b, p);
    q = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0b0101), q);
  }
  alignas(32) double pq[4], qq[4];
  _mm256_store_pd(pq, p);
  _mm256_store_pd(qq, q);
  double re = pq[0] + pq[1] + pq[2] + pq[3];
  double im = (qq[0] - qq[1]) + (qq[2] - qq[3]);
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double yr = y[2 * i], yi = y[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  out[0] = re;
  out[1] = im;
}

void gemv_acc(std::size_t n, const double* a, double sr, double si, const double* x, double* y) {
  for (std::size_t j = 0; j < n; ++j) {
    const double tr = sr * x[2 * j] - si * x[2 * j + 1];
    const double ti = sr * x[2 * j + 1] + si * x[2 * j];
    if (tr == 0.0 && ti == 0.0) continue;
    axpy(n, tr, ti, a + 2 * n * j, y);
  }
}

// lo >= 1: neighbouring groups i, i+1 (i even) map to neighbouring indices,
// so each __m256d carries the same sub-index k for two groups.
void pair_acc_wide(std::size_t dim, unsigned hi, unsigned lo, const double* gr, const double* gi, const double* x,
                   double* y) {
  __m256d cr[16], ci[16];
  for (int k = 0; k < 16; ++k) {
    cr[k] = _mm256_set1_pd(gr[k]);
    ci[k] = _mm256_set1_pd(gi[k]);
  }
  const std::size_t mh = std::size_t{1} << hi, ml = std::size_t{1} << lo;
  const std::size_t groups = dim >> 2;
  for (std::size_t i = 0; i < groups; i += 2) {
    const std::size_t base = insert_zero_bit(insert_zero_bit(i, lo), hi);
    const std::size_t idx[4] = {base, base | ml, base | mh, base | mh | ml};
    __m256d v[4], vs[4];
    for (int k = 0; k < 4; ++k) {
      v[k] = _mm256_loadu_pd(x + 2 * idx[k]);
      vs[k] = _mm256_permute_pd(v[k], 0b0101);
    }
    for (int r = 0; r < 4; ++r) {
      __m256d a = _mm256_mul_pd(cr[4 * r], v[0]);
      __m256d b = _mm256_mul_pd(ci[4 * r], vs[0]);
      for (int k = 1; k < 4; ++k) {
        a = _mm256_fmadd_pd(cr[4 * r + k], v[k], a);
        b = _mm256_fmadd_pd(ci[4 * r + k], vs[k], b);
      }
      double* dst = y + 2 * idx[r];
      _mm256_storeu_pd(dst, _mm256_add_pd(_mm256_loadu_pd(dst), _mm256_addsub_pd(a, b)));
    }
  }
}

// lo == 0: the two values of the low spin are neighbours, so a register
// holds (k = 2q, k = 2q + 1) for one group.
void pair_acc_low(std::size_t dim, unsigned hi, const double* gr, const double* gi, const double* x, double* y) {
  // For output rows (2p, 2p+1) and input block q:
  //   diag = (g[2p][2q],   g[2p+1][2q+1]) applied to (x_2q, x_2q+1)
  //   off  = (g[2p][2q+1], g[2p+1][2q])   applied to (x_2q+1, x_2q)
  __m256d dr[2][2], di[2][2], orr[2][2], oi[2][2];
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const int d0 = 4 * (2 * p) + 2 * q, d1 = 4 * (2 * p + 1) + 2 * q + 1;
      const int o0 = 4 * (2 * p) + 2 * q + 1, o1 = 4 * (2 * p + 1) + 2 * q;
      dr[p][q] = _mm256_setr_pd(gr[d0], gr[d0], gr[d1], gr[d1]);
      di[p][q] = _mm256_setr_pd(gi[d0], gi[d0], gi[d1], gi[d1]);
      orr[p][q] = _mm256_setr_pd(gr[o0], gr[o0], gr[o1], gr[o1]);
      oi[p][q] = _mm256_setr_pd(gi[o0], gi[o0], gi[o1], gi[o1]);
    }
  const std::size_t mh = std::size_t{1} << hi;
  const std::size_t groups = dim >> 2;
  for (std::size_t i = 0; i < groups; ++i) {
    const std::size_t base = insert_zero_bit(i << 1, hi);
    const std::size_t blk[2] = {base, base | mh};
    __m256d v[2], vs[2], w[2], ws[2];
    for (int q = 0; q < 2; ++q) {
      v[q] = _mm256_loadu_pd(x + 2 * blk[q]);
      vs[q] = _mm256_permute_pd(v[q], 0b0101);
      w[q] = _mm256_permute2f128_pd(v[q], v[q], 0x01);
      ws[q] = _mm256_permute_pd(w[q], 0b0101);
    }
    for (int p = 0; p < 2; ++p) {
      __m256d a = _mm256_mul_pd(dr[p][0], v[0]);
      __m256d b = _mm256_mul_pd(di[p][0], vs[0]);
      a = _mm256_fmadd_pd(orr[p][0], w[0], a);
      b = _mm256_fmadd_pd(oi[p][0], ws[0], b);
      a = _mm256_fmadd_pd(dr[p][1], v[1], a);
      b = _mm256_fmadd_pd(di[p][1], vs[1], b);
      a = _mm256_fmadd_pd(orr[p][1], w[1], a);
      b = _mm256_fmadd_pd(oi[p][1], ws[1], b);
      double* dst = y + 2 * blk[p];
      _mm256_storeu_pd(dst, _mm256_add_pd(_mm256_loadu_pd(dst), _mm256_addsub_pd(a, b)));
    }
  }
}

void pair_acc(std::size_t dim, unsigned hi, unsigned lo, const double* g, double sr, double si, const double* x,
              double* y) {
  double gr[16], gi[16];
  for (int k = 0; k < 16; ++k) {
    gr[k] = sr * g[2 * k] - si * g[2 * k + 1];
    gi[k] = sr * g[2 * k + 1] + si * g[2 * k];
  }
  if (lo == 0)
    pair_acc_low(dim, hi, gr, gi, x, y);
  else
    pair_acc_wide(dim, hi, lo, gr, gi, x, y);
}

}  // namespace

const Table kAvx2Table{"avx2", axpy, norm_sq, dot, gemv_acc, pair_acc};

}  // namespace darkpassage::kernels::detail
