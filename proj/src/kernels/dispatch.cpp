#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "darkpassage/kernels.hpp"
#include "kernels_impl.hpp"

namespace darkpassage::kernels {

namespace {

const detail::Table& table_for(Isa isa) {
#if defined(DARKPASSAGE_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::kAvx2Table;
#endif
  (void)isa;
  return detail::kScalarTable;
}

const double* raw(std::span<const cplx> s) { return reinterpret_cast<const double*>(s.data()); }
double* raw(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }

void check_same(std::size_t a, std::size_t b, const char* who) {
  if (a != b) throw ValidationError(std::string(who) + ": size mismatch");
}

Isa detect() {
  if (const char* env = std::getenv("DARKPASSAGE_KERNELS")) {
    const std::string_view v{env};
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> s{static_cast<int>(detect())};
  return s;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(DARKPASSAGE_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

KernelSet::KernelSet(Isa isa) : isa_(isa), table_(&table_for(isa)) {
  if (!isa_available(isa)) throw ValidationError(std::string("kernel set not available: ") + isa_name(isa));
}

#define DP_TABLE (*static_cast<const detail::Table*>(table_))

void KernelSet::axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) const {
  check_same(x.size(), y.size(), "axpy");
  DP_TABLE.axpy(x.size(), a.real(), a.imag(), raw(x), raw(y));
}

double KernelSet::norm_sq(std::span<const cplx> x) const { return DP_TABLE.norm_sq(x.size(), raw(x)); }

cplx KernelSet::dot(std::span<const cplx> x, std::span<const cplx> y) const {
  check_same(x.size(), y.size(), "dot");
  double out[2];
  DP_TABLE.dot(x.size(), raw(x), raw(y), out);
  return {out[0], out[1]};
}

void KernelSet::gemv_accumulate(const Matrix& a, cplx scale, std::span<const cplx> x, std::span<cplx> y) const {
  const auto n = static_cast<std::size_t>(a.rows());
  if (static_cast<std::size_t>(a.cols()) != n) throw ValidationError("gemv_accumulate: matrix must be square");
  check_same(n, x.size(), "gemv_accumulate");
  check_same(n, y.size(), "gemv_accumulate");
  DP_TABLE.gemv_acc(n, reinterpret_cast<const double*>(a.data()), scale.real(), scale.imag(), raw(x), raw(y));
}

void KernelSet::pair_accumulate(unsigned bit_a, unsigned bit_b, const Matrix4& g, cplx scale,
                                std::span<const cplx> x, std::span<cplx> y) const {
  check_same(x.size(), y.size(), "pair_accumulate");
  const std::size_t dim = x.size();
  if (bit_a == bit_b) throw ValidationError("pair_accumulate: bits must differ");
  if (dim < 4 || (dim & (dim - 1)) != 0 || (std::size_t{1} << std::max(bit_a, bit_b)) >= dim)
    throw ValidationError("pair_accumulate: dimension does not cover both bits");
  // kernels expect row-major g with the higher bit as the leading index
  std::array<cplx, 16> rm;
  const bool swap = bit_a < bit_b;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int rr = swap ? ((r & 1) << 1 | r >> 1) : r;
      const int cc = swap ? ((c & 1) << 1 | c >> 1) : c;
      rm[static_cast<std::size_t>(4 * r + c)] = g(rr, cc);
    }
  const unsigned hi = std::max(bit_a, bit_b), lo = std::min(bit_a, bit_b);
  DP_TABLE.pair_acc(dim, hi, lo, reinterpret_cast<const double*>(rm.data()), scale.real(), scale.imag(), raw(x),
                    raw(y));
}

#undef DP_TABLE

const KernelSet& active() {
  static const KernelSet scalar{Isa::Scalar};
  if (static_cast<Isa>(selected().load(std::memory_order_relaxed)) == Isa::Avx2 && isa_available(Isa::Avx2)) {
    static const KernelSet avx2{Isa::Avx2};
    return avx2;
  }
  return scalar;
}

void select(Isa isa) {
  if (!isa_available(isa)) throw ValidationError(std::string("kernel set not available: ") + isa_name(isa));
  selected().store(static_cast<int>(isa), std::memory_order_relaxed);
}

}  // namespace darkpassage::kernels
