#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "darkpassage/types.hpp"

namespace oracle {

using darkpassage::cplx;
using darkpassage::Matrix;
using darkpassage::Vector;

/// exp(-i H t) for Hermitian H via its eigendecomposition.
inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, -w(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Classical fixed-step RK4 for i dpsi/dt = H(t) psi.
inline Vector rk4(const std::function<Matrix(double)>& h, Vector psi, double t0, double t1, int steps) {
  const double dt = (t1 - t0) / steps;
  const cplx mi(0.0, -1.0);
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const Vector k1 = mi * (h(t) * psi);
    const Vector k2 = mi * (h(t + dt / 2) * (psi + dt / 2 * k1));
    const Vector k3 = mi * (h(t + dt / 2) * (psi + dt / 2 * k2));
    const Vector k4 = mi * (h(t + dt) * (psi + dt * k3));
    psi += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

/// Right singular vector of the smallest singular value.
inline Vector null_vector(const Matrix& h) {
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullV);
  return svd.matrixV().col(h.cols() - 1);
}

/// |<a|b>| / (|a||b|)
inline double overlap(const Vector& a, const Vector& b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240607);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Vector random_state(Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(n(rng()), n(rng()));
  return v / v.norm();
}

}  // namespace oracle
