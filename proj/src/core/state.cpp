#include "darkpassage/state.hpp"

#include <cmath>
#include <numbers>

namespace darkpassage {

namespace {
constexpr std::size_t kMaxFullSpins = 24;
}

QubitState::QubitState(cplx alpha, cplx beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!std::isfinite(n) || n == 0.0) throw ValidationError("qubit state must have nonzero finite norm");
  alpha_ = alpha / n;
  beta_ = beta / n;
}

QubitState QubitState::up_x() { return {kInvSqrt2, kInvSqrt2}; }

QubitState QubitState::from_vector(const Vector2& v) { return {v(0), v(1)}; }

std::size_t expected_dim(Representation rep, std::size_t n_spins) {
  switch (rep) {
    case Representation::SingleExcitation:
      return n_spins;
    case Representation::FullSpace:
      if (n_spins > kMaxFullSpins) throw ValidationError("full-space state too large");
      return std::size_t{1} << n_spins;
    case Representation::AdiabaticBasis:
      return 3;
  }
  return 0;
}

QuantumState::QuantumState(Representation rep, std::size_t n_spins, Vector amplitudes, bool normalise)
    : rep_(rep), n_spins_(n_spins), amps_(std::move(amplitudes)) {
  if (n_spins_ == 0) throw ValidationError("state needs at least one spin");
  if (static_cast<std::size_t>(amps_.size()) != expected_dim(rep_, n_spins_))
    throw ValidationError("amplitude vector has wrong dimension for representation");
  if (normalise) {
    const double n = amps_.norm();
    if (!std::isfinite(n) || n == 0.0) throw ValidationError("state must have nonzero finite norm");
    amps_ /= n;
  }
}

QuantumState::QuantumState(Representation rep, std::size_t n_spins, Vector amplitudes)
    : QuantumState(rep, n_spins, std::move(amplitudes), true) {}

QuantumState QuantumState::unnormalized(Representation rep, std::size_t n_spins, Vector amplitudes) {
  return QuantumState(rep, n_spins, std::move(amplitudes), false);
}

QuantumState QuantumState::site_excitation(std::size_t n_spins, std::size_t site) {
  if (site >= n_spins) throw ValidationError("site index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n_spins));
  v(static_cast<Eigen::Index>(site)) = 1.0;
  return {Representation::SingleExcitation, n_spins, std::move(v)};
}

QuantumState QuantumState::basis_state(std::size_t n_spins, std::uint64_t bits) {
  const std::size_t dim = expected_dim(Representation::FullSpace, n_spins);
  if (bits >= dim) throw ValidationError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(bits)) = 1.0;
  return {Representation::FullSpace, n_spins, std::move(v)};
}

QuantumState QuantumState::product(std::span<const QubitState> spins) {
  if (spins.empty()) throw ValidationError("product state needs at least one spin");
  Vector v(1);
  v(0) = 1.0;
  for (const auto& q : spins) {
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q.alpha();
      next(2 * i + 1) = v(i) * q.beta();
    }
    v = std::move(next);
  }
  return {Representation::FullSpace, spins.size(), std::move(v)};
}

std::size_t QuantumState::site_count() const {
  return rep_ == Representation::AdiabaticBasis ? 3 : n_spins_;
}

double QuantumState::down_population(std::size_t site) const {
  if (site >= site_count()) throw ValidationError("site index out of range");
  switch (rep_) {
    case Representation::SingleExcitation:
    case Representation::AdiabaticBasis:
      return std::norm(amps_(static_cast<Eigen::Index>(site)));
    case Representation::FullSpace: {
      const std::size_t mask = std::size_t{1} << spin_bit(n_spins_, site);
      double p = 0.0;
      for (Eigen::Index i = 0; i < amps_.size(); ++i)
        if (static_cast<std::size_t>(i) & mask) p += std::norm(amps_(i));
      return p;
    }
  }
  return 0.0;
}

std::string QuantumState::label(std::size_t index) const {
  if (index >= dim()) throw ValidationError("basis index out of range");
  switch (rep_) {
    case Representation::SingleExcitation: {
      std::string s(n_spins_, '0');
      s[index] = '1';
      return s;
    }
    case Representation::FullSpace: {
      std::string s(n_spins_, '0');
      for (std::size_t site = 0; site < n_spins_; ++site)
        if (index & (std::size_t{1} << spin_bit(n_spins_, site))) s[site] = '1';
      return s;
    }
    case Representation::AdiabaticBasis: {
      static const char* names[] = {"a+", "a0", "a-"};
      return names[index];
    }
  }
  return {};
}

}  // namespace darkpassage
