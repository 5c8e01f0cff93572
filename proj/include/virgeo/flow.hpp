#ifndef VIRGEO_FLOW_HPP
#define VIRGEO_FLOW_HPP

// Geodesic flows: Burgers on Diff(S^1) in Lagrangian and Eulerian form, and
// KdV on the Virasoro-Bott group.
//
//   Lagrangian  f_tt = -2 f_t f_tx / f_x        (F = f_t f_x^2 is constant in t)
//   Eulerian    u_t = -3 u u_x
//   KdV         u_t + 3 u u_x + a u_xxx = 0    (a constant)

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "virgeo/field.hpp"
#include "virgeo/group.hpp"

namespace virgeo {

enum class RunStatus { completed, blowup, non_finite };

const char* to_string(RunStatus s);

struct StepConfig {
  double dt = 1e-3;
  double T = 0.0;
  int band = 64;
  int grid = 0;  // collocation nodes; 0 picks the smallest odd 3^a 5^b >= 2 band + 1
  int record_every = 1;
  int snapshot_every = 0;  // 0 disables snapshots
};

struct BlowupThresholds {
  double min_fx = 1e-3;
  /// Fraction of the fluctuation energy allowed above tail_start * band.
  double tail_fraction = 1e-3;
  double tail_start = 0.5;
};

struct Snapshot {
  double t = 0.0;
  PeriodicField field;
};

struct RunRecord {
  std::vector<std::string> names;
  std::vector<double> times;
  std::vector<std::vector<double>> series;  // series[i] belongs to names[i]
  std::vector<Snapshot> snapshots;
  RunStatus status = RunStatus::completed;
  std::string diagnostic;
  double halt_time = std::numeric_limits<double>::quiet_NaN();

  const std::vector<double>& column(const std::string& name) const;

  /// max_n |s_n - s_0| / max(|s_0|, floor)
  double relative_drift(const std::string& name, double floor = 1.0) const;

  void push(double t, const std::vector<std::pair<std::string, double>>& values);
};

struct EulerianState {
  PeriodicField u;
  double t = 0.0;
};

struct LagrangianState {
  CircleDiffeo f;
  PeriodicField f_t;
  double t = 0.0;
};

struct VirasoroGeodesicState {
  PeriodicField u;
  double a = 0.0;
  double t = 0.0;
};

template <typename State>
struct FlowResult {
  RunRecord record;
  State final_state;
};

using Monitors = std::vector<std::pair<std::string, double>>;

/// energy 1/2 int u^2, momentum int u
Monitors monitors(const EulerianState& s);
/// energy 1/2 int f_t^2 f_x, momentum int f_t f_x, min_fx
Monitors monitors(const LagrangianState& s);
/// momentum int u, casimir int u^2, energy 1/2 (int u^2 + a^2)
Monitors monitors(const VirasoroGeodesicState& s);

/// F = f_t f_x^2 at the nodes of f's grid.
Eigen::VectorXd lagrangian_invariant(const LagrangianState& s);

/// u = f_t o f^-1
PeriodicField eulerian_velocity(const LagrangianState& s, int band);

/// Share of the energy in modes k >= 1 that lies above start * band.
double spectral_tail_fraction(const PeriodicField& u, double start = 0.5);

/// t* = -1 / (3 min u0'); +inf when u0' >= 0 everywhere.
double blowup_time(const PeriodicField& u0);

/// Burgers solution by characteristics: u(x, t) = u0(xi), x = xi + 3 u0(xi) t.
/// Throws std::domain_error past the blow-up time.
double characteristics_oracle(const PeriodicField& u0, double t, double x);

/// Collocation on the nodes of s0.f's grid; the semi-discrete system keeps F
/// exactly constant at each node. Halts when min f_x < thresholds.min_fx.
FlowResult<LagrangianState> evolve_burgers_lagrangian(const LagrangianState& s0, const StepConfig& cfg,
                                                      const BlowupThresholds& thresholds = {});

/// Pseudo-spectral RK4 with exact (padded) quadratic products at cfg.band.
FlowResult<EulerianState> evolve_burgers_eulerian(const EulerianState& s0, const StepConfig& cfg,
                                                  const BlowupThresholds& thresholds = {});

/// Lawson integrating-factor RK4; dispersion is exact per mode.
FlowResult<VirasoroGeodesicState> evolve_kdv(const VirasoroGeodesicState& s0, const StepConfig& cfg,
                                             const BlowupThresholds& thresholds = {});

/// Right-hand sides used by the steppers, exposed for tests.
PeriodicField burgers_rhs(const PeriodicField& u, int band);
PeriodicField kdv_nonlinear_rhs(const PeriodicField& u, int band);

/// Number of steps of size dt covering [0, T]; T must be a multiple of dt up
/// to rounding.
long step_count(double dt, double T);

}  // namespace virgeo

#endif  // VIRGEO_FLOW_HPP
