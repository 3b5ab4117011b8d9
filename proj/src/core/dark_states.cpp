#include "darkpassage/dark_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace darkpassage {

namespace {

double coupling_norm(double K, double L, const char* who) {
  if (!std::isfinite(K) || !std::isfinite(L)) throw ValidationError(std::string(who) + ": couplings must be finite");
  const double f = std::hypot(K, L);
  if (f == 0.0) throw ValidationError(std::string(who) + ": K and L cannot both vanish");
  return f;
}

}  // namespace

Vector3 dark_state_analytic(double K, double L, double alpha) {
  const double f = coupling_norm(K, L, "dark_state_analytic");
  return Vector3{L / f, 0.0, -K / f * std::polar(1.0, alpha)};
}

std::array<Eigenpair, 2> bright_states_analytic(double K, double L) {
  const double f = coupling_norm(K, L, "bright_states_analytic");
  const double s = kInvSqrt2 / f;
  return {Eigenpair{Vector3{s * K, s * f, s * L}, f}, Eigenpair{Vector3{s * K, -s * f, s * L}, -f}};
}

void fix_phase(Vector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

Vector dark_state_numeric(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw ValidationError("dark_state_numeric: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("dark_state_numeric: eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double hnorm = ev.cwiseAbs().maxCoeff();
  const double tol = 1e-9 * hnorm;
  std::vector<Eigen::Index> zero;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) <= tol) zero.push_back(i);
  if (zero.empty()) throw NoNullSpaceError("dark_state_numeric: no eigenvalue within tolerance of zero");
  if (zero.size() > 1) {
    Matrix basis(h.rows(), static_cast<Eigen::Index>(zero.size()));
    for (std::size_t k = 0; k < zero.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(zero[k]);
    throw DegenerateNullSpaceError(
        "dark_state_numeric: null space has dimension " + std::to_string(zero.size()), std::move(basis));
  }
  Vector v = es.eigenvectors().col(zero.front());
  v.normalize();
  fix_phase(v);
  return v;
}

Vector astirap_dark_state(std::size_t n, double K, double L) {
  if (n == 0) throw ValidationError("astirap_dark_state: n must be >= 1");
  coupling_norm(K, L, "astirap_dark_state");
  // factor out max(|K|,|L|) so large n does not overflow
  const double s = std::max(std::abs(K), std::abs(L));
  const double k = K / s, l = L / s;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(2 * n + 1));
  for (std::size_t j = 0; j <= n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    v(static_cast<Eigen::Index>(2 * j)) =
        sign * std::pow(l, static_cast<double>(n - j)) * std::pow(k, static_cast<double>(j));
  }
  v.normalize();
  return v;
}

Vector sstirap_dark_state(std::size_t n_sites, double K, double L, double M) {
  if (n_sites < 5 || n_sites % 2 == 0) throw ValidationError("sstirap_dark_state: N must be odd and >= 5");
  if (!(M > 0.0) || !std::isfinite(M)) throw ValidationError("sstirap_dark_state: M must be > 0");
  coupling_norm(K, L, "sstirap_dark_state");
  // Closed form of the recursion a[j+2] = -(c[j]/c[j+1]) a[j] with
  // c = (K, M, ..., M, L) and a[0] = L; valid also when L = 0.
  const auto n = static_cast<Eigen::Index>(n_sites);
  Vector v = Vector::Zero(n);
  v(0) = L;
  double interior = -L * K / M;
  for (Eigen::Index j = 2; j + 1 < n; j += 2) {
    v(j) = interior;
    interior = -interior;
  }
  const std::size_t steps = (n_sites - 1) / 2;
  v(n - 1) = (steps % 2 == 0 ? 1.0 : -1.0) * K;
  v.normalize();
  return v;
}

Matrix tridiagonal_chain(const std::vector<double>& bonds) {
  const auto n = static_cast<Eigen::Index>(bonds.size() + 1);
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = bonds[static_cast<std::size_t>(i)];
    h(i + 1, i) = bonds[static_cast<std::size_t>(i)];
  }
  return h;
}

}  // namespace darkpassage
