#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "darkpassage/protocols.hpp"
#include "darkpassage/sweep.hpp"

namespace darkpassage {

enum class ExperimentKind { Transfer3, Astirap, Sstirap, Collective, Polarization, RotateSegment, RotateZxz, Darkstate };

const char* experiment_name(ExperimentKind kind);
/// Throws ValidationError for unknown names ("sweep" is not an experiment kind).
ExperimentKind parse_experiment(const std::string& name);

struct ExperimentParams {
  ExperimentKind kind = ExperimentKind::Transfer3;
  TransferParams transfer;
  QubitState qubit = QubitState(0.6, 0.8);
  std::size_t n = 2;   // alternating scheme: 2n+1 spins
  std::size_t N = 5;   // straddling / collective chain length
  double p = 0.0;      // middle-spin down probability
  double phi = 0.0;    // segment phase
  Axis axis = Axis::Z;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::optional<double> segment_gap;
  // dark-state query
  double K = 1.0, L = 1.0;
  bool darkstate_alternating = false;  // use n
  bool darkstate_straddle = false;     // use N and transfer.M
};

/// Checks every precondition of the selected experiment without running it.
void validate_experiment(const ExperimentParams& params);

RunReport run_experiment(const ExperimentParams& params);

/// Sets one named parameter, as used by sweep axes. Besides the scalar
/// config keys this accepts "Gsigma" (G = Gsigma / sigma, applied after the
/// other axes) and "beta_sq" (qubit sqrt(1 - b), sqrt(b)).
void apply_parameter(ExperimentParams& params, const std::string& name, double value);

/// Names accepted by apply_parameter.
const std::vector<std::string>& sweepable_parameters();

/// Scalars describing a report in a fixed order (wall time excluded).
NamedValues report_scalars(const RunReport& report);

/// Sweep over `grid` with every point applied on top of `base`.
SweepTable run_experiment_sweep(const ExperimentParams& base, const SweepGrid& grid, std::size_t threads);

}  // namespace darkpassage
