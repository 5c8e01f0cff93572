#ifndef VIRGEO_SRC_STEPPER_HPP
#define VIRGEO_SRC_STEPPER_HPP

// Fixed-step Runge-Kutta kernels on flat complex state vectors.

#include <Eigen/Core>

namespace virgeo::detail {

template <typename Vec, typename Rhs>
Vec rk4_step(const Vec& y, double dt, Rhs&& rhs) {
  const Vec k1 = rhs(y);
  const Vec k2 = rhs(Vec(y + 0.5 * dt * k1));
  const Vec k3 = rhs(Vec(y + 0.5 * dt * k2));
  const Vec k4 = rhs(Vec(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Lawson integrating-factor RK4 for y' = diag(L) y + N(y); the linear part
/// is propagated exactly.
template <typename Rhs>
Eigen::VectorXcd lawson_rk4_step(const Eigen::VectorXcd& y, double dt, const Eigen::VectorXcd& linear, Rhs&& rhs) {
  const Eigen::ArrayXcd half = (0.5 * dt * linear.array()).exp();
  const Eigen::ArrayXcd full = half * half;
  const Eigen::VectorXcd k1 = rhs(y);
  const Eigen::VectorXcd k2 = rhs(Eigen::VectorXcd(half * (y + 0.5 * dt * k1).array()));
  const Eigen::VectorXcd k3 = rhs(Eigen::VectorXcd(half * y.array() + 0.5 * dt * k2.array()));
  const Eigen::VectorXcd k4 = rhs(Eigen::VectorXcd(full * y.array() + dt * half * k3.array()));
  return (full * y.array() +
          (dt / 6.0) * (full * k1.array() + 2.0 * half * (k2.array() + k3.array()) + k4.array()))
      .matrix();
}

}  // namespace virgeo::detail

#endif
