#include <doctest.h>

#include <array>
#include <cmath>

#include "../support.hpp"
#include "darkpassage/hamiltonian.hpp"
#include "darkpassage/measures.hpp"

using namespace darkpassage;
using doctest::Approx;

namespace {

QubitState random_qubit() { return QubitState::from_vector(Vector2(oracle::random_state(2))); }

Matrix2 outer(const Vector2& v) { return v * v.adjoint(); }

}  // namespace

TEST_SUITE("pure_fidelity") {
  TEST_CASE("examples") {
    const Vector a = oracle::random_state(5);
    CHECK(pure_fidelity(a, a) == Approx(1.0).epsilon(1e-14));
    CHECK(pure_fidelity(QuantumState::basis_state(2, 1), QuantumState::basis_state(2, 2)) == 0.0);
    Vector u(2), v(2);
    u << 1, 0;
    v << kInvSqrt2, kInvSqrt2;
    CHECK(pure_fidelity(u, v) == Approx(kInvSqrt2).epsilon(1e-15));
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(pure_fidelity(QuantumState::basis_state(2, 1), QuantumState::basis_state(3, 1)), ValidationError);
  }

  TEST_CASE("phase insensitive and bounded") {
    for (int k = 0; k < 50; ++k) {
      const Vector a = oracle::random_state(6), b = oracle::random_state(6);
      const double f = pure_fidelity(a, b);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0 + 1e-15);
      CHECK(pure_fidelity(a, b * std::polar(1.0, 0.7)) == Approx(f).epsilon(1e-13));
    }
  }
}

TEST_SUITE("corrected_mixed_fidelity") {
  TEST_CASE("examples") {
    const QubitState psi = random_qubit();
    const Matrix2 z = pauli_z();
    CHECK(corrected_mixed_fidelity(psi, z * outer(psi.vector()) * z) == Approx(1.0).epsilon(1e-14));
    for (double p : {0.0, 0.1, 0.5}) {
      Matrix2 rho = Matrix2::Zero();
      rho(0, 0) = 1 - p;
      rho(1, 1) = p;
      CHECK(corrected_mixed_fidelity(QubitState::up(), rho) == Approx(std::sqrt(1 - p)).epsilon(1e-15));
    }
    CHECK(corrected_mixed_fidelity(psi, Matrix2::Identity() / 2.0) == Approx(kInvSqrt2).epsilon(1e-14));
  }

  TEST_CASE("pure reduced state equals pure fidelity against the corrected target") {
    for (int k = 0; k < 50; ++k) {
      const QubitState psi = random_qubit(), phi = random_qubit();
      const Vector2 target = pauli_z() * psi.vector();
      CHECK(corrected_mixed_fidelity(psi, outer(phi.vector())) ==
            Approx(pure_fidelity(Vector(target), Vector(phi.vector()))).epsilon(1e-12));
    }
  }

  TEST_CASE("invalid density matrices") {
    Matrix2 rho = Matrix2::Identity();
    CHECK_THROWS_AS(validate_density_matrix(rho), ValidationError);  // trace 2
    rho << 0.5, 0.3, 0.1, 0.5;
    CHECK_THROWS_AS(validate_density_matrix(rho), ValidationError);  // not Hermitian
    rho << 1.2, 0, 0, -0.2;
    CHECK_THROWS_AS(validate_density_matrix(rho), ValidationError);  // not PSD
    CHECK_THROWS_AS(corrected_mixed_fidelity(QubitState::up(), rho), ValidationError);
  }
}

TEST_SUITE("partial_trace_to_last") {
  TEST_CASE("product state") {
    const QubitState phi = random_qubit();
    const std::array<QubitState, 3> spins{QubitState::up(), QubitState::up(), phi};
    const Matrix2 rho = partial_trace_to_last(QuantumState::product(spins));
    CHECK((rho - outer(phi.vector())).norm() < 1e-15);
  }

  TEST_CASE("Bell pair on the last two spins") {
    Vector v = Vector::Zero(8);
    v(0b001) = kInvSqrt2;
    v(0b010) = kInvSqrt2;
    const Matrix2 rho = partial_trace_to_last(QuantumState(Representation::FullSpace, 3, v));
    CHECK((rho - Matrix2::Identity() / 2.0).norm() < 1e-15);
  }

  TEST_CASE("mixture equals weighted outer-product sum") {
    const QuantumState a(Representation::FullSpace, 3, oracle::random_state(8));
    const QuantumState b(Representation::FullSpace, 3, oracle::random_state(8));
    const Matrix2 rho = partial_trace_to_last(MixedState({{0.25, a}, {0.75, b}}));
    auto direct = [](const QuantumState& s) {
      Matrix2 r = Matrix2::Zero();
      const Vector& v = s.amplitudes();
      for (int rest = 0; rest < 4; ++rest)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) r(i, j) += v(2 * rest + i) * std::conj(v(2 * rest + j));
      return r;
    };
    CHECK((rho - (0.25 * direct(a) + 0.75 * direct(b))).norm() < 1e-14);
  }

  TEST_CASE("trace and positivity are preserved") {
    for (std::size_t n = 1; n <= 6; ++n) {
      const QuantumState s(Representation::FullSpace, n, oracle::random_state(std::size_t{1} << n));
      const Matrix2 rho = partial_trace_to_last(s);
      CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
      CHECK_NOTHROW(validate_density_matrix(rho, 1e-10));
    }
  }

  TEST_CASE("subspace states are rejected") {
    CHECK_THROWS_AS(partial_trace_to_last(QuantumState::site_excitation(3, 0)), ValidationError);
  }
}

TEST_SUITE("project_and_gate") {
  TEST_CASE("projection onto a product prefix") {
    const QubitState phi = random_qubit();
    const std::array<QubitState, 3> spins{QubitState::up_x(), QubitState::down(), phi};
    const QuantumState s = QuantumState::product(spins);
    const std::array<QubitState, 2> prefix{QubitState::up_x(), QubitState::down()};
    CHECK((project_onto_prefix(s, prefix) - phi.vector()).norm() < 1e-15);
    const std::array<QubitState, 2> orth{QubitState::up_x(), QubitState::up()};
    CHECK(project_onto_prefix(s, orth).norm() < 1e-15);
  }

  TEST_CASE("gate fidelity is one up to global phase and drops for other gates") {
    Matrix2 r;
    r << std::polar(1.0, 0.3), 0, 0, std::polar(1.0, -0.3);
    CHECK(gate_fidelity(r, r * std::polar(1.0, 1.9)) == Approx(1.0).epsilon(1e-15));
    Matrix2 x;
    x << 0, 1, 1, 0;
    CHECK(gate_fidelity(r, x) < 1e-15);
    CHECK(gate_fidelity(Matrix2::Identity(), pauli_z()) < 1e-15);
  }
}

TEST_SUITE("down_population_trace") {
  const ChainSpec chain(3, {BondSpec(PulseShape::gaussian(5.0, 1.0, 1.0)), BondSpec(PulseShape::gaussian(5.0, 1.0, 0.0))});

  TEST_CASE("all-up state stays up") {
    const Trajectory tr = propagate(full_space_schedule(chain, -4.0, 5.0, 0.5), QuantumState::basis_state(3, 0));
    for (std::size_t site = 0; site < 3; ++site)
      for (double p : down_population_trace(tr, site)) CHECK(p == 0.0);
  }

  TEST_CASE("initial sample reflects the initial excitation and values stay in range") {
    const Trajectory tr = propagate(full_space_schedule(chain, -4.0, 5.0, 0.5), QuantumState::basis_state(3, 4));
    CHECK(down_population_trace(tr, 0).front() == 1.0);
    CHECK(down_population_trace(tr, 1).front() == 0.0);
    CHECK(down_population_trace(tr, 2).front() == 0.0);
    for (std::size_t site = 0; site < 3; ++site)
      for (double p : down_population_trace(tr, site)) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-9);
      }
    CHECK_THROWS_AS(down_population_trace(tr, 3), ValidationError);
  }
}

TEST_SUITE("thermal_polarization") {
  TEST_CASE("examples") {
    CHECK(thermal_polarization(0.0) == 0.5);
    CHECK(thermal_polarization(800.0) == Approx(0.0));
    CHECK(thermal_polarization(1e6) >= 0.0);
    CHECK(thermal_polarization(std::log(9.0)) == Approx(0.1).epsilon(1e-15));
  }

  TEST_CASE("strictly decreasing and symmetric") {
    double prev = 1.0;
    for (double x = -30.0; x <= 30.0; x += 0.25) {
      const double p = thermal_polarization(x);
      CHECK(p < prev);
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      CHECK(std::abs(p + thermal_polarization(-x) - 1.0) <= 1e-15);
      prev = p;
    }
  }
}

TEST_SUITE("non_symmetric_population") {
  TEST_CASE("symmetric and antisymmetric group states") {
    // spins 1 and 2 of four: W state is symmetric, singlet is not
    Vector w = Vector::Zero(16), singlet = Vector::Zero(16);
    w(0b0100) = w(0b0010) = kInvSqrt2;
    singlet(0b0100) = kInvSqrt2;
    singlet(0b0010) = -kInvSqrt2;
    const SpinRange g{1, 2};
    CHECK(non_symmetric_population(QuantumState(Representation::FullSpace, 4, w), g) < 1e-15);
    CHECK(non_symmetric_population(QuantumState(Representation::FullSpace, 4, singlet), g) == Approx(1.0));
    CHECK(non_symmetric_population(QuantumState::basis_state(4, 0b1001), g) < 1e-15);
    CHECK(non_symmetric_population(QuantumState::basis_state(4, 0b0100), g) == Approx(0.5));
  }

  TEST_CASE("bounded for random states") {
    for (int k = 0; k < 20; ++k) {
      const double p = non_symmetric_population(QuantumState(Representation::FullSpace, 5, oracle::random_state(32)), {1, 3});
      CHECK(p >= -1e-15);
      CHECK(p <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("simpson quadrature integrates cubics exactly") {
  CHECK(integrate_simpson([](double x) { return x * x * x - 2 * x + 1; }, -1.0, 2.0, 3) == Approx(3.75).epsilon(1e-14));
  CHECK(integrate_simpson([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 400) ==
        Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-12));
}
