#include "darkpassage/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>

#include "darkpassage/dark_states.hpp"

namespace darkpassage {

double mixing_angle_rate(double K, double L, double K_dot, double L_dot) {
  const double f2 = K * K + L * L;
  if (f2 == 0.0) throw ValidationError("mixing angle undefined for K = L = 0");
  return (K_dot * L - L_dot * K) / f2;
}

Matrix3 adiabatic_frame_hamiltonian(double K, double L, double K_dot, double L_dot) {
  const double f = std::hypot(K, L);
  if (f == 0.0) throw ValidationError("adiabatic_frame_hamiltonian: F = 0");
  const cplx c = kI * mixing_angle_rate(K, L, K_dot, L_dot) * kInvSqrt2;
  Matrix3 h;
  h << f, -c, 0.0,  //
      c, 0.0, c,    //
      0.0, -c, -f;
  return h;
}

Matrix3 adiabatic_basis(double K, double L) {
  const auto bright = bright_states_analytic(K, L);
  Matrix3 u;
  u.col(0) = bright[0].vector;
  u.col(1) = -dark_state_analytic(K, L);
  u.col(2) = bright[1].vector;
  return u;
}

AdiabaticityReport adiabaticity_report(const PulseShape& pump, const PulseShape& stokes, double t0, double t1,
                                       std::size_t samples) {
  if (!(t0 < t1)) throw ValidationError("adiabaticity_report: empty window");
  if (samples < 2) throw ValidationError("adiabaticity_report: need at least two samples");

  AdiabaticityReport rep;
  rep.gamma_trace.reserve(samples);
  double f_max = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double K = pump(t), L = stokes(t);
    const double f = std::hypot(K, L);
    f_max = std::max(f_max, f);
    rep.gamma_trace.push_back({t, std::atan2(K, L), f});
  }
  if (f_max == 0.0) throw ValidationError("adiabaticity_report: F vanishes on the whole window");

  const double floor = kFloorFraction * f_max;
  for (const auto& s : rep.gamma_trace) {
    if (s.F < floor) {
      ++rep.excluded_samples;
      continue;
    }
    const double K = pump(s.t), L = stokes(s.t);
    const double margin = std::abs(pump.derivative(s.t) * L - stokes.derivative(s.t) * K) / (s.F * s.F * s.F);
    rep.max_margin = std::max(rep.max_margin, margin);
  }

  double area = std::numeric_limits<double>::infinity();
  for (const PulseShape* p : {&pump, &stokes})
    if (const auto* g = std::get_if<GaussianPulse>(&p->shape())) area = std::min(area, g->peak * g->sigma);
  rep.pulse_area = std::isfinite(area) ? area : 0.0;
  return rep;
}

AdiabaticityReport adiabaticity_report(const ChainSpec& chain, double t0, double t1, std::size_t samples) {
  if (chain.n_spins() != 3) throw ValidationError("adiabaticity_report: three-spin chain required");
  return adiabaticity_report(chain.bond(0).pulse(), chain.bond(1).pulse(), t0, t1, samples);
}

}  // namespace darkpassage
