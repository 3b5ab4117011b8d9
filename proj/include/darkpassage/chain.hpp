#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "darkpassage/pulse.hpp"

namespace darkpassage {

/// Which XY-type family a bond belongs to. Z conserves total S_z; X is the
/// same interaction with the axes cycled (X,Y,Z) -> (Y,Z,X).
enum class Axis { Z, X };

class BondSpec {
 public:
  BondSpec() = default;
  /// `phase` is wrapped into [0, 2pi).
  BondSpec(PulseShape pulse, double phase = 0.0, Axis axis = Axis::Z);

  const PulseShape& pulse() const { return pulse_; }
  double phase() const { return phase_; }
  Axis axis() const { return axis_; }

 private:
  PulseShape pulse_{};
  double phase_ = 0.0;
  Axis axis_ = Axis::Z;
};

/// Inclusive 0-based range of spins.
struct SpinRange {
  std::size_t first;
  std::size_t last;
  std::size_t size() const { return last - first + 1; }
  bool contains(std::size_t i) const { return i >= first && i <= last; }
};

/// Nearest-neighbour chain. `bonds[i]` couples spins i and i+1 (0-based).
///
/// With a collective group, bonds inside the group must carry zero pulses; the
/// bond entering the group and the bond leaving it couple the neighbouring
/// end spin to every member with strength J/sqrt(m) (m = group size), which
/// is the collective-spin coupling restricted to the fully symmetric sector.
class ChainSpec {
 public:
  ChainSpec(std::size_t n_spins, std::vector<BondSpec> bonds, std::optional<SpinRange> collective_group = std::nullopt);

  std::size_t n_spins() const { return n_spins_; }
  const std::vector<BondSpec>& bonds() const { return bonds_; }
  const BondSpec& bond(std::size_t i) const { return bonds_.at(i); }
  const std::optional<SpinRange>& collective_group() const { return group_; }

  bool all_z() const;

 private:
  std::size_t n_spins_;
  std::vector<BondSpec> bonds_;
  std::optional<SpinRange> group_;
};

}  // namespace darkpassage
