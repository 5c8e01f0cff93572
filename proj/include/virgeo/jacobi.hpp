#ifndef VIRGEO_JACOBI_HPP
#define VIRGEO_JACOBI_HPP

// Jacobi fields along geodesics of Diff(S^1) and the Virasoro-Bott group, in
// right trivialization. A Jacobi field y(t) is the variation of a family of
// geodesics; w = y_t - [u, y] is the variation of the velocity and obeys the
// linearized Euler equation
//   w_t = -ad(w)^T u - ad(u)^T w.
//
// On the Virasoro algebra the central part of w is B1 = b_t + w(y, u), which
// is therefore constant, and b(t) = B0 + B1 t - int_0^t w(y, u) ds.

#include <complex>
#include <string>
#include <vector>

#include "virgeo/algebra.hpp"
#include "virgeo/flow.hpp"
#include "virgeo/geometry.hpp"

namespace virgeo {

/// y_tt obtained by differentiating w = y_t - [u, y] along the geodesic
/// u_t = -ad(u)^T u.
template <MetricAlgebra A>
typename A::Element direct_jacobi_rhs(const A& alg, const typename A::Element& u, const typename A::Element& y,
                                      const typename A::Element& y_t) {
  using E = typename A::Element;
  const E u_t = -1.0 * alg.ad_transpose(u, u);
  const E w = y_t - alg.bracket(u, y);
  return alg.bracket(u_t, y) + alg.bracket(u, y_t) - alg.alpha(u, w) - alg.ad_transpose(u, w);
}

/// y_tt from D_t D_t y + R(y, u) u = 0, expanding the outer D_t with
/// u_t = -ad(u)^T u.
template <MetricAlgebra A>
typename A::Element curvature_form_rhs(const A& alg, const typename A::Element& u, const typename A::Element& y,
                                       const typename A::Element& y_t) {
  using E = typename A::Element;
  using S = typename A::Scalar;
  const S half(0.5);
  // K(v) z = 1/2 (ad(v)^T + alpha(v) - ad(v)) z, so D_t z = z_t + K(u) z
  auto k = [&](const E& v, const E& z) {
    return half * (alg.ad_transpose(v, z) + alg.alpha(v, z) - alg.bracket(v, z));
  };
  const E u_t = S(-1) * alg.ad_transpose(u, u);
  const E dy = y_t + k(u, y);
  // D_t dy = y_tt + K(u_t) y + K(u) y_t + K(u) dy
  return S(-1) * (curvature_operator(alg, y, u, u) + k(u_t, y) + k(u, y_t) + k(u, dy));
}

/// y_tt = -3u^2 y_xx - 4u y_tx - 2u_x y_t
PeriodicField jacobi_diff_rhs(const PeriodicField& u, const PeriodicField& y, const PeriodicField& y_t,
                              ProductMode mode = ProductMode::exact());

/// y_tt = -u(4y_tx + 3u y_xx + a y_xxxx) - u_x(2y_t + 2a y_xxx)
///        - u_xxx(B1 - 3a y_x) - a y_txxx
PeriodicField jacobi_vir_rhs(const PeriodicField& u, double a, const PeriodicField& y, const PeriodicField& y_t,
                             double b1, ProductMode mode = ProductMode::exact());

/// b_tt = int (-y_txxx u + y_xxx (3u_x u + a u_xxx))
double jacobi_vir_central_rhs(const PeriodicField& u, double a, const PeriodicField& y, const PeriodicField& y_t);

/// B1 = b_t + w(y, u)
double b1_invariant(const PeriodicField& u, const PeriodicField& y, double b_t);

/// sigma(y, z) = int (y z_t - y_t z + 2u (y z_x - y_x z))
double sigma_diff(const PeriodicField& u, const PeriodicField& y, const PeriodicField& y_t, const PeriodicField& z,
                  const PeriodicField& z_t);

struct VirJacobiData {
  PeriodicField y;
  double b = 0.0;
  PeriodicField y_t;
  double b_t = 0.0;
};

/// sigma_diff + b C1 - c B1 - a int y' z''
double sigma_vir(const PeriodicField& u, double a, const VirJacobiData& y, const VirJacobiData& z);

struct JacobiTrajectoryDiff {
  std::vector<double> times;
  std::vector<PeriodicField> u;
  std::vector<PeriodicField> y;
  std::vector<PeriodicField> y_t;
  RunStatus status = RunStatus::completed;
  std::string diagnostic;
};

/// Coupled RK4 on (u, y, y_t) with dealiased products at cfg.band.
JacobiTrajectoryDiff evolve_jacobi_diff(const PeriodicField& u0, const PeriodicField& y0, const PeriodicField& y_t0,
                                        const StepConfig& cfg, const BlowupThresholds& thresholds = {});

struct JacobiTrajectoryVir {
  double a = 0.0;
  double b0 = 0.0;  // B0
  double b1 = 0.0;  // B1 = b_t + w(y, u) at t = 0
  std::vector<double> times;
  std::vector<PeriodicField> u;
  std::vector<PeriodicField> y;
  std::vector<PeriodicField> y_t;
  std::vector<double> b_closed;      // B0 + B1 t - int_0^t w(y, u)
  std::vector<double> b_integrated;  // from b_tt
  std::vector<double> b_t;           // from b_tt
  std::vector<double> b1_series;     // b_t + w(y, u) along the run
  RunStatus status = RunStatus::completed;
  std::string diagnostic;
};

/// Evolves (u, w, y) with w = y_t - [u, y]:
///   u_t = -3 u u_x - a u_xxx
///   w_t = -3 (u w)_x - a w_xxx - B1 u_xxx
///   y_t = w + u_x y - u y_x
/// by Lawson RK4 (the a d^3 terms are exact per mode), together with b from
/// both the closed form and the central equation b_tt.
JacobiTrajectoryVir evolve_jacobi_vir(const PeriodicField& u0, double a, const PeriodicField& y0,
                                      const PeriodicField& y_t0, double b0, double b_t0, const StepConfig& cfg,
                                      const BlowupThresholds& thresholds = {});

/// Same system integrated directly in the form y_tt = jacobi_vir_rhs with
/// plain RK4. Stiff (-a u y_xxxx); only usable at small band and step.
JacobiTrajectoryVir evolve_jacobi_vir_direct(const PeriodicField& u0, double a, const PeriodicField& y0,
                                             const PeriodicField& y_t0, double b0, double b_t0,
                                             const StepConfig& cfg);

std::vector<double> sigma_series(const JacobiTrajectoryDiff& y, const JacobiTrajectoryDiff& z);
std::vector<double> sigma_series(const JacobiTrajectoryVir& y, const JacobiTrajectoryVir& z);

/// Mode k of the Jacobi field along u = c:
///   y'' = (3c^2 k^2 - a c k^4) y + i (a k^3 - 4 c k) y'.
std::complex<double> constant_u_mode_oracle(double c, double a, int k, std::complex<double> y0,
                                            std::complex<double> y_t0, double t);

struct VariationResult {
  std::vector<double> times;
  std::vector<PeriodicField> y;
};

/// Finite-difference Jacobi field with y(0) = 0, y_t(0) = v: geodesics from
/// u0 and u0 + eps v are integrated, reconstructed as group curves g, g_eps,
/// and y = ((g_eps - g) / eps) o g^-1.
VariationResult variation_oracle(const PeriodicField& u0, const PeriodicField& v, double eps, const StepConfig& cfg,
                                 GridSpec group_grid = GridSpec{256});

/// Times where ||y(t)||_L2 has a strict local minimum below rel_floor times
/// its running maximum; candidates for conjugate points.
std::vector<double> norm_minima(const std::vector<double>& times, const std::vector<PeriodicField>& y,
                                double rel_floor = 1e-2);

}  // namespace virgeo

#endif  // VIRGEO_JACOBI_HPP
