#include "kernels_impl.hpp"

namespace darkpassage::kernels::detail {

namespace {

void axpy(std::size_t n, double ar, double ai, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += ar * xr - ai * xi;
    y[2 * i + 1] += ar * xi + ai * xr;
  }
}

double norm_sq(std::size_t n, const double* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += x[i] * x[i];
  return s;
}

void dot(std::size_t n, const double* x, const double* y, double* out) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
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

void pair_acc(std::size_t dim, unsigned hi, unsigned lo, const double* g, double sr, double si, const double* x,
              double* y) {
  double gr[16], gi[16];
  for (int k = 0; k < 16; ++k) {
    gr[k] = sr * g[2 * k] - si * g[2 * k + 1];
    gi[k] = sr * g[2 * k + 1] + si * g[2 * k];
  }
  const std::size_t mh = std::size_t{1} << hi, ml = std::size_t{1} << lo;
  const std::size_t groups = dim >> 2;
  for (std::size_t i = 0; i < groups; ++i) {
    const std::size_t base = insert_zero_bit(insert_zero_bit(i, lo), hi);
    const std::size_t idx[4] = {base, base | ml, base | mh, base | mh | ml};
    double xr[4], xi[4];
    for (int k = 0; k < 4; ++k) {
      xr[k] = x[2 * idx[k]];
      xi[k] = x[2 * idx[k] + 1];
    }
    for (int r = 0; r < 4; ++r) {
      double accr = 0.0, acci = 0.0;
      for (int k = 0; k < 4; ++k) {
        accr += gr[4 * r + k] * xr[k] - gi[4 * r + k] * xi[k];
        acci += gr[4 * r + k] * xi[k] + gi[4 * r + k] * xr[k];
      }
      y[2 * idx[r]] += accr;
      y[2 * idx[r] + 1] += acci;
    }
  }
}

}  // namespace

const Table kScalarTable{"scalar", axpy, norm_sq, dot, gemv_acc, pair_acc};

}  // namespace darkpassage::kernels::detail
