#include "darkpassage/chain.hpp"

#include <cmath>
#include <string>

#include "darkpassage/types.hpp"

namespace darkpassage {

BondSpec::BondSpec(PulseShape pulse, double phase, Axis axis) : pulse_(pulse), axis_(axis) {
  if (!std::isfinite(phase)) throw ValidationError("bond phase must be finite");
  phase_ = std::fmod(phase, 2.0 * kPi);
  if (phase_ < 0.0) phase_ += 2.0 * kPi;
  if (phase_ >= 2.0 * kPi) phase_ = 0.0;
}

ChainSpec::ChainSpec(std::size_t n_spins, std::vector<BondSpec> bonds, std::optional<SpinRange> collective_group)
    : n_spins_(n_spins), bonds_(std::move(bonds)), group_(collective_group) {
  if (n_spins_ < 2) throw ValidationError("chain needs at least two spins");
  if (bonds_.size() != n_spins_ - 1)
    throw ValidationError("chain with " + std::to_string(n_spins_) + " spins needs " + std::to_string(n_spins_ - 1) +
                          " bonds, got " + std::to_string(bonds_.size()));
  if (group_) {
    const auto& g = *group_;
    if (g.first > g.last) throw ValidationError("collective group range is empty");
    if (g.first == 0 || g.last + 1 >= n_spins_)
      throw ValidationError("collective group must consist of middle spins only");
    for (std::size_t b = g.first; b < g.last; ++b) {
      if (!bonds_[b].pulse().is_zero())
        throw ValidationError("bonds inside a collective group must carry zero pulses");
    }
  }
}

bool ChainSpec::all_z() const {
  for (const auto& b : bonds_)
    if (b.axis() != Axis::Z) return false;
  return true;
}

}  // namespace darkpassage
