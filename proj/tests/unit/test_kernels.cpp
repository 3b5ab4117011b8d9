#include <doctest.h>

#include <bit>

#include "../support.hpp"
#include "darkpassage/hamiltonian.hpp"
#include "darkpassage/kernels.hpp"

using namespace darkpassage;
using kernels::Isa;
using kernels::KernelSet;

namespace {

std::span<const cplx> cs(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<cplx> ms(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Matrix4 random_matrix4() {
  Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(oracle::uniform(-1, 1), oracle::uniform(-1, 1));
  return m;
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::Scalar};
  if (kernels::isa_available(Isa::Avx2)) out.push_back(Isa::Avx2);
  return out;
}

}  // namespace

TEST_CASE("kernels agree with Eigen references on every available ISA") {
  if (!kernels::isa_available(Isa::Avx2)) MESSAGE("AVX2 unavailable: only the scalar kernels are exercised");
  for (Isa isa : available()) {
    CAPTURE(kernels::isa_name(isa));
    const KernelSet k(isa);
    for (Eigen::Index n : {1, 2, 3, 4, 5, 7, 8, 13, 16, 31, 64}) {
      const Vector x = oracle::random_state(n), y0 = oracle::random_state(n);
      const cplx a(0.3, -1.7);

      Vector y = y0;
      k.axpy(a, cs(x), ms(y));
      CHECK((y - (y0 + a * x)).norm() < 1e-14);
      CHECK(k.norm_sq(cs(x)) == doctest::Approx(x.squaredNorm()).epsilon(1e-14));
      CHECK(std::abs(k.dot(cs(x), cs(y0)) - x.dot(y0)) < 1e-14);

      Matrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(oracle::uniform(-1, 1), oracle::uniform(-1, 1));
      y = y0;
      k.gemv_accumulate(m, a, cs(x), ms(y));
      CHECK((y - (y0 + a * (m * x))).norm() < 1e-13 * (1 + m.norm()));
    }
  }
}

TEST_CASE("pair kernel matches the dense embedding for all bit pairs") {
  for (Isa isa : available()) {
    CAPTURE(kernels::isa_name(isa));
    const KernelSet k(isa);
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto dim = Eigen::Index{1} << n;
      for (std::size_t sa = 0; sa < n; ++sa)
        for (std::size_t sb = 0; sb < n; ++sb) {
          if (sa == sb) continue;
          const Matrix4 g = random_matrix4();
          Matrix dense = Matrix::Zero(dim, dim);
          embed_pair(dense, n, sa, sb, g);
          const Vector x = oracle::random_state(dim), y0 = oracle::random_state(dim);
          Vector y = y0;
          const cplx scale(-0.4, 0.9);
          k.pair_accumulate(static_cast<unsigned>(n - 1 - sa), static_cast<unsigned>(n - 1 - sb), g, scale, cs(x),
                            ms(y));
          CHECK((y - (y0 + scale * (dense * x))).norm() < 1e-13);
        }
    }
  }
}

TEST_CASE("scalar and AVX2 kernels are equivalent") {
  if (!kernels::isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 unavailable: skipped");
    return;
  }
  const KernelSet s(Isa::Scalar), v(Isa::Avx2);
  for (Eigen::Index dim : {2, 4, 8, 32, 128, 1024}) {
    const Vector x = oracle::random_state(dim);
    const Matrix4 g = random_matrix4();
    const unsigned nb = static_cast<unsigned>(std::countr_zero(static_cast<unsigned long>(dim)));
    for (unsigned a = 0; a < nb; ++a)
      for (unsigned b = 0; b < nb; ++b) {
        if (a == b) continue;
        Vector ys = Vector::Zero(dim), yv = Vector::Zero(dim);
        s.pair_accumulate(a, b, g, 1.0, cs(x), ms(ys));
        v.pair_accumulate(a, b, g, 1.0, cs(x), ms(yv));
        CHECK((ys - yv).norm() < 1e-14);
      }
    CHECK(s.norm_sq(cs(x)) == doctest::Approx(v.norm_sq(cs(x))).epsilon(1e-15));
  }
}

TEST_CASE("selection and validation") {
  CHECK(std::string(kernels::isa_name(Isa::Scalar)) == "scalar");
  CHECK(kernels::isa_available(Isa::Scalar));
  const KernelSet k(Isa::Scalar);
  Vector x = oracle::random_state(8), y = Vector::Zero(6);
  CHECK_THROWS_AS(k.pair_accumulate(0, 1, Matrix4::Identity(), 1.0, cs(x), ms(y)), ValidationError);
  Vector y8 = Vector::Zero(8);
  CHECK_THROWS_AS(k.pair_accumulate(0, 3, Matrix4::Identity(), 1.0, cs(x), ms(y8)), ValidationError);
  CHECK_THROWS_AS(k.pair_accumulate(1, 1, Matrix4::Identity(), 1.0, cs(x), ms(y8)), ValidationError);
  const Isa before = kernels::active().isa();
  kernels::select(Isa::Scalar);
  CHECK(kernels::active().isa() == Isa::Scalar);
  kernels::select(before);
}
