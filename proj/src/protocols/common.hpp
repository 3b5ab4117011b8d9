#pragma once

#include <chrono>
#include <vector>

#include "darkpassage/protocols.hpp"

namespace darkpassage::detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline constexpr std::size_t kMarginSamples = 4001;

/// Records per-spin maxima, drift and the trace of a full-space trajectory.
void attach_trajectory(RunReport& report, Trajectory trajectory);

/// Rewrites a one-down trajectory started from the site excitation as the
/// trajectory of alpha|all up> + beta|excitation>: populations scale by
/// |beta|^2 and the norm includes the static all-up part.
Trajectory embed_single_excitation(Trajectory tr, const QubitState& psi);

/// |<target|out>| for alpha|up..> + beta c with target alpha|up..> + beta s e_last.
double qubit_transfer_fidelity(const QubitState& psi, const Vector& c, cplx target_factor);

/// Qubit alpha|up> + beta c_last / |...| seen on the last site.
QubitState transferred_qubit(const QubitState& psi, const Vector& c);

void attach_margin(RunReport& report, const PulseShape& pump, const PulseShape& stokes, double t0, double t1);

}  // namespace darkpassage::detail
