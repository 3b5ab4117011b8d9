#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "darkpassage/chain.hpp"
#include "darkpassage/propagator.hpp"
#include "darkpassage/state.hpp"
#include "darkpassage/types.hpp"

namespace darkpassage {

/// |<a|b>|. Throws on dimension mismatch.
double pure_fidelity(const QuantumState& a, const QuantumState& b);
double pure_fidelity(const Vector& a, const Vector& b);

/// Throws ValidationError unless rho is Hermitian, unit trace and PSD within `tol`.
void validate_density_matrix(const Matrix2& rho, double tol = 1e-9);

/// sqrt(<psi| Z rho Z |psi>).
double corrected_mixed_fidelity(const QubitState& psi, const Matrix2& rho);

/// Reduced density matrix of the last spin. Full-space states only.
Matrix2 partial_trace_to_last(const QuantumState& state);
Matrix2 partial_trace_to_last(const MixedState& state);

/// Contracts the first N-1 spins of a full-space state with the product
/// state `prefix` and returns the (unnormalised) amplitudes left on the last spin.
Vector2 project_onto_prefix(const QuantumState& state, std::span<const QubitState> prefix);

/// |Tr(R^dag M)| / 2: phase-insensitive agreement of a 2x2 map with a target
/// unitary; 1 iff M equals R up to a global phase.
double gate_fidelity(const Matrix2& target, const Matrix2& map);

std::vector<double> down_population_trace(const Trajectory& trajectory, std::size_t site);

/// Thermal down-spin probability 1 / (1 + e^x), x = g mu_B H / kT.
double thermal_polarization(double x);

/// Population outside the fully symmetric sector of the spins in `group`.
double non_symmetric_population(const QuantumState& state, SpinRange group);

/// Composite Simpson rule with `intervals` (rounded up to even) panels.
double integrate_simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals);

}  // namespace darkpassage
