#include "darkpassage/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "darkpassage/kernels.hpp"

namespace darkpassage {

namespace {

// Dormand-Prince 5(4) tableau (Hairer, Norsett & Wanner, DOPRI5).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous extension of order 4
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 5.0;

std::span<const cplx> cs(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<cplx> ms(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

std::vector<double> sample_grid(double t_start, double t_end, double stride) {
  if (!(t_start < t_end) || !(stride > 0.0)) throw ValidationError("sample_grid: invalid window or stride");
  std::vector<double> out;
  const double span = t_end - t_start;
  const double slack = 1e-9 * stride;
  for (std::size_t k = 0;; ++k) {
    const double t = t_start + static_cast<double>(k) * stride;
    if (t >= t_end - slack) break;
    out.push_back(t);
    if (out.size() > 50'000'000) throw ValidationError("sample_grid: stride too small for window");
  }
  (void)span;
  out.push_back(t_end);
  return out;
}

IntegrationResult integrate(const Schedule& schedule, const Vector& psi0, const IntegratorOptions& opt,
                            std::span<const double> sample_times,
                            const std::function<void(std::size_t, const Vector&)>& on_sample,
                            const std::function<void(double, const Vector&)>& on_step) {
  const auto n = static_cast<Eigen::Index>(schedule.dim());
  if (psi0.size() != n) throw ValidationError("integrate: initial state dimension does not match schedule");
  if (!(opt.tolerance > 0.0)) throw ValidationError("integrate: tolerance must be > 0");
  const auto& K = kernels::active();

  const double t0 = schedule.t_start(), t_end = schedule.t_end();
  const double span = t_end - t0;

  IntegrationResult res;
  IntegratorStats& st = res.stats;
  st.min_step = std::numeric_limits<double>::infinity();

  auto rhs = [&](double t, const Vector& y, Vector& out) {
    out.setZero();
    schedule.apply(t, cs(y), ms(out), -kI);
    ++st.rhs_evals;
  };
  // out = y + h * sum coeff_i k_i
  auto combo = [&](Vector& out, const Vector& y, double h, std::initializer_list<std::pair<double, const Vector*>> terms) {
    out = y;
    for (const auto& [c, k] : terms)
      if (c != 0.0) K.axpy(h * c, cs(*k), ms(out));
  };

  Vector y = psi0, y1(n), ytmp(n), err(n);
  Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  const double norm0 = std::sqrt(K.norm_sq(cs(psi0)));
  if (norm0 == 0.0) throw ValidationError("integrate: zero initial state");

  std::size_t next_sample = 0;
  auto emit_until = [&](double t_hi, auto&& interpolate) {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t_hi) {
      if (on_sample) on_sample(next_sample, interpolate(sample_times[next_sample]));
      ++next_sample;
    }
  };
  // samples at the start are the initial state
  emit_until(t0, [&](double) -> const Vector& { return y; });

  double t = t0;
  rhs(t, y, k1);
  double h;
  {
    const double d1n = std::sqrt(K.norm_sq(cs(k1)));
    h = d1n > 1e-300 ? 0.01 * norm0 / d1n : 1e-3 * span;
    h = std::min(h, span);
  }

  bool last = false;
  bool rejected_prev = false;
  while (true) {
    if (st.accepted + st.rejected >= opt.max_steps) throw NumericalError("integrate: step budget exhausted");
    if (h < 64.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(t), std::abs(t_end), span}))
      throw StepUnderflowError("integrate: step size underflow at t = " + std::to_string(t));
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }

    combo(ytmp, y, h, {{a21, &k1}});
    rhs(t + c2 * h, ytmp, k2);
    combo(ytmp, y, h, {{a31, &k1}, {a32, &k2}});
    rhs(t + c3 * h, ytmp, k3);
    combo(ytmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(t + c4 * h, ytmp, k4);
    combo(ytmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(t + c5 * h, ytmp, k5);
    combo(ytmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const double t_new = last ? t_end : t + h;
    rhs(t_new, ytmp, k6);
    combo(y1, y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    rhs(t_new, y1, k7);

    err.setZero();
    for (const auto& [c, k] : {std::pair{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}})
      K.axpy(h * c, cs(*k), ms(err));
    // error per unit step: local errors summed over the window stay below the target
    const double err_norm = std::sqrt(K.norm_sq(cs(err))) / (opt.tolerance * norm0 * (h / span));

    if (!(err_norm <= 1.0)) {
      if (!std::isfinite(err_norm)) throw NumericalError("integrate: non-finite error estimate");
      ++st.rejected;
      last = false;
      h *= std::max(kFacMin, kSafety * std::pow(err_norm, -0.25));
      rejected_prev = true;
      continue;
    }

    ++st.accepted;
    st.min_step = std::min(st.min_step, h);
    st.max_step = std::max(st.max_step, h);

    if (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
      // dense output coefficients
      Vector r2 = y1 - y;
      Vector r3 = h * k1 - r2;
      Vector r4 = r2 - h * k7 - r3;
      Vector r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      Vector tmp(n);
      emit_until(t_new, [&](double ts) -> const Vector& {
        if (ts == t_new) return y1;
        const double th = (ts - t) / h, th1 = 1.0 - th;
        tmp = y + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
        return tmp;
      });
    }

    y.swap(y1);
    k1.swap(k7);  // FSAL
    t = t_new;

    const double drift = std::abs(std::sqrt(K.norm_sq(cs(y))) - norm0) / norm0;
    res.norm_drift = std::max(res.norm_drift, drift);
    if (drift > opt.norm_drift_limit)
      throw NormDriftError("integrate: norm drift " + std::to_string(drift) + " exceeds limit", drift);
    if (on_step) on_step(t, y);

    if (last) break;
    double fac = kSafety * std::pow(std::max(err_norm, 1e-10), -0.25);
    fac = std::clamp(fac, kFacMin, rejected_prev ? 1.0 : kFacMax);
    rejected_prev = false;
    h *= fac;
  }
  res.final_state = std::move(y);
  return res;
}

}  // namespace darkpassage
