#pragma once

#include <cstddef>
#include <vector>

#include "darkpassage/chain.hpp"
#include "darkpassage/types.hpp"

namespace darkpassage {

/// d(gamma)/dt for tan(gamma) = K/L, i.e. (K' L - L' K) / F^2.
double mixing_angle_rate(double K, double L, double K_dot, double L_dot);

/// Three-level Hamiltonian in the instantaneous eigenbasis {a+, a0, a-}:
///
///   [ F            -i g/sqrt2   0          ]
///   [ i g/sqrt2     0           i g/sqrt2  ]
///   [ 0            -i g/sqrt2  -F          ]
///
/// with g = d(gamma)/dt. Throws if F = 0.
Matrix3 adiabatic_frame_hamiltonian(double K, double L, double K_dot, double L_dot);

/// Columns of the frame transformation U(t) for which
/// U^dag H U - i U^dag dU/dt equals adiabatic_frame_hamiltonian:
/// (a+, -a0, a-) with a0 the dark state (1/F)[L, 0, -K].
Matrix3 adiabatic_basis(double K, double L);

struct GammaSample {
  double t;
  double gamma;
  double F;
};

struct AdiabaticityReport {
  double max_margin = 0.0;      // max over kept samples of |K'L - L'K| / F^3
  double pulse_area = 0.0;      // min G*sigma over the Gaussian pulses involved
  std::vector<GammaSample> gamma_trace;
  std::size_t excluded_samples = 0;  // samples with F below the floor
};

inline constexpr double kFloorFraction = 1e-6;

/// Samples `samples` equally spaced times on [t0, t1] (endpoints included).
AdiabaticityReport adiabaticity_report(const PulseShape& pump, const PulseShape& stokes, double t0, double t1,
                                       std::size_t samples);

/// Three-spin chain: bond 0 is the pump K, bond 1 the Stokes L.
AdiabaticityReport adiabaticity_report(const ChainSpec& chain, double t0, double t1, std::size_t samples);

}  // namespace darkpassage
