#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "darkpassage/adiabatic.hpp"
#include "darkpassage/chain.hpp"
#include "darkpassage/integrator.hpp"
#include "darkpassage/propagator.hpp"
#include "darkpassage/schedule.hpp"
#include "darkpassage/state.hpp"

namespace darkpassage {

/// Gaussian counter-intuitive passage: the Stokes pulse L peaks at t0, the
/// pump pulse K at t0 + delay. Defaults resolve to delay = sigma and
/// pad = 4 sigma.
struct TransferParams {
  double G = 100.0;
  double sigma = 1.0;
  std::optional<double> delay;
  std::optional<double> pad;
  double t0 = 0.0;
  double M = 0.0;                      // straddle strength (straddling scheme only)
  std::optional<double> straddle_ramp;  // defaults to sigma
  double tolerance = 1e-10;
  std::optional<double> sample_stride;  // defaults to sigma / 20
  // perturbations for robustness studies
  double pump_scale = 1.0;
  double stokes_scale = 1.0;
  double pump_shift = 0.0;
  double stokes_shift = 0.0;
  /// Swap pulse order so the excitation moves from the last spin to the first.
  bool backward = false;

  double delay_value() const { return delay.value_or(sigma); }
  double pad_value() const { return pad.value_or(4.0 * sigma); }
  double stride_value() const { return sample_stride.value_or(sigma / 20.0); }
  IntegratorOptions integrator() const;
  /// Throws ValidationError on non-physical values.
  void validate() const;
};

enum class BondRole { Pump, Stokes, Straddle, Off };

struct BondAssignment {
  BondRole role;
  double phase = 0.0;
  Axis axis = Axis::Z;
};

enum class Backend { FullSpace, Subspace };

struct PassagePlan {
  ChainSpec chain;
  Schedule schedule;
  PulseShape pump;    // envelope of the K-role bonds
  PulseShape stokes;  // envelope of the L-role bonds
  std::vector<std::string> warnings;
  bool counterintuitive = true;
};

/// Assigns Gaussian pump/Stokes envelopes (and the straddle plateau) to the
/// bonds and fixes the integration window. Pulse centres, after shifts, must
/// sit at least 4 sigma inside the window.
PassagePlan counterintuitive_schedule(const TransferParams& params, std::size_t n_spins,
                                      const std::vector<BondAssignment>& bonds, Backend backend,
                                      std::optional<SpinRange> group = std::nullopt);

/// Sign picked up by the transferred down amplitude along a dark passage over
/// an odd chain of n_sites: (-1)^((n_sites-1)/2).
double transfer_sign(std::size_t n_sites);

/// One (pump, Stokes) envelope pair, used for the F/gamma columns of traces.
struct PulsePair {
  PulseShape pump;
  PulseShape stokes;
};

struct RunReport {
  std::string experiment;
  std::optional<QubitState> output_qubit;  // pure output on the target spin, when defined
  double fidelity = 0.0;
  std::vector<double> max_down_population;  // per spin
  double adiabaticity_margin = 0.0;
  double pulse_area = 0.0;
  double norm_drift = 0.0;
  double wall_time_s = 0.0;
  /// Additional named scalars in a fixed order.
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> warnings;
  std::optional<Trajectory> trajectory;
  std::vector<PulsePair> pulses;

  double metric(const std::string& name) const;
  void add(std::string name, double value) { metrics.emplace_back(std::move(name), value); }
};

RunReport run_transfer_3spin(const QubitState& psi, const TransferParams& params);

/// Alternating scheme on 2n+1 spins.
RunReport run_astirap(std::size_t n, const QubitState& psi, const TransferParams& params);

/// Straddling scheme on odd n_spins >= 5 with interior bonds at params.M.
RunReport run_sstirap(std::size_t n_spins, const QubitState& psi, const TransferParams& params);

/// End spins around a collective group of n_spins - 2 middle spins; runs the
/// full simulation and the effective three-level model.
RunReport run_collective_transfer(std::size_t n_spins, const QubitState& psi, const TransferParams& params);

struct PolarizationReport {
  RunReport run;
  double numeric_fidelity = 0.0;
  double formula_fidelity = 0.0;     // 1 - 2 p |alpha|^2 |beta|^2
  double adiabatic_fidelity = 0.0;   // sqrt(1 - 4 p |alpha|^2 |beta|^2)
  double theta = 0.0;                // integral of F over the window
  Matrix2 reduced_last = Matrix2::Zero();
  Vector3 branch_down_up = Vector3::Zero();    // from |up down up>, basis (|duu>, |udu>, |uud>)
  Vector3 branch_down_down = Vector3::Zero();  // from |down down up>, basis (|udd>, |dud>, |ddu>)
  double branch_down_up_overlap = 0.0;
  double branch_down_down_overlap = 0.0;
};

/// Middle spin starts in diag(1-p, p).
PolarizationReport run_imperfect_polarization(const QubitState& psi, double p, const TransferParams& params);

/// R_z(chi) = diag(1, e^{i chi}); R_x(chi) = Had R_z(chi) Had.
Matrix2 rz(double chi);
Matrix2 rx(double chi);
Matrix2 hadamard();

/// Three-spin phased passage: bond 0 pump at phase 0, bond 1 Stokes at `phase`.
/// Ancillas start in |up> (Z) or |up_x> (X). Target R_axis(phase + pi).
RunReport run_rotation_segment(Axis axis, double phase, const QubitState& psi, const TransferParams& params);

struct RotationSpec {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  TransferParams segment;
  std::optional<double> segment_gap;  // K_k centre to L_{k+1} centre; defaults to 8 sigma, at least 4 sigma
  double gap_value() const { return segment_gap.value_or(8.0 * segment.sigma); }
};

/// Seven-spin Z-X-Z composite; target R_z(gamma) R_x(beta) R_z(alpha).
RunReport run_rotation_zxz(const RotationSpec& spec, const QubitState& psi);

}  // namespace darkpassage
