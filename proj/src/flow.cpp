#include "virgeo/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stepper.hpp"

namespace virgeo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using ModeVector = PeriodicField::ModeVector;

// Odd sizes keep nodal values and modes in bijection (no Nyquist mode).
int odd_fft_size_at_least(int n) {
  int best = 1;
  while (best < n) best *= 3;
  for (int p3 = 1; p3 < 3 * n; p3 *= 3)
    for (int m = p3; m < best; m *= 5)
      if (m >= n) best = m;
  return best;
}

GridSpec collocation_grid(const StepConfig& cfg) {
  if (cfg.grid > 0) {
    if (cfg.grid < 2 * cfg.band + 1) throw std::invalid_argument("grid must have at least 2N+1 nodes");
    return GridSpec{cfg.grid};
  }
  return GridSpec{odd_fft_size_at_least(2 * cfg.band + 1)};
}

void check_config(const StepConfig& cfg) {
  if (!(cfg.dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.T >= 0)) throw std::invalid_argument("T must be nonnegative");
  if (cfg.band < 1) throw std::invalid_argument("band must be at least 1");
  if (cfg.record_every < 1) throw std::invalid_argument("record_every must be at least 1");
}

double trapezoid_sum(const Eigen::VectorXd& v) { return v.sum() * kTwoPi / static_cast<double>(v.size()); }

/// Drives a fixed-step loop shared by the three flows. `advance(h)` takes one
/// step, `observe(t)` records, `check(t)` returns a non-completed status with a
/// diagnostic when the run must halt.
template <typename Advance, typename Observe, typename Check, typename Snap>
void run_loop(const StepConfig& cfg, RunRecord& rec, Advance&& advance, Observe&& observe, Check&& check,
              Snap&& snap) {
  const long n = step_count(cfg.dt, cfg.T);
  observe(0.0);
  if (cfg.snapshot_every > 0) snap(0.0);
  for (long i = 1; i <= n; ++i) {
    const double t_prev = (i - 1) * cfg.dt;
    const double t = (i == n) ? cfg.T : i * cfg.dt;
    advance(t - t_prev);
    const auto [status, why] = check(t);
    if (status != RunStatus::completed) {
      rec.status = status;
      rec.diagnostic = why;
      rec.halt_time = t;
      if (rec.times.empty() || rec.times.back() < t) observe(t);
      if (cfg.snapshot_every > 0) snap(t);
      return;
    }
    if (i % cfg.record_every == 0 || i == n) observe(t);
    if (cfg.snapshot_every > 0 && (i % cfg.snapshot_every == 0 || i == n)) snap(t);
  }
}

std::pair<RunStatus, std::string> spectral_check(const PeriodicField& u, const BlowupThresholds& th, double t) {
  if (!u.all_finite()) return {RunStatus::non_finite, "non-finite modes at t = " + std::to_string(t)};
  const double tail = spectral_tail_fraction(u, th.tail_start);
  if (tail > th.tail_fraction) {
    return {RunStatus::blowup, "spectral tail fraction " + std::to_string(tail) + " exceeds " +
                                   std::to_string(th.tail_fraction) + " at t = " + std::to_string(t)};
  }
  return {RunStatus::completed, {}};
}

}  // namespace

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::blowup:
      return "blowup";
    case RunStatus::non_finite:
      return "non_finite";
  }
  return "unknown";
}

long step_count(double dt, double T) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  return static_cast<long>(std::ceil(T / dt - 1e-9));
}

const std::vector<double>& RunRecord::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return series[i];
  throw std::out_of_range("no monitor named " + name);
}

double RunRecord::relative_drift(const std::string& name, double floor) const {
  const auto& s = column(name);
  if (s.empty()) return 0.0;
  double worst = 0.0;
  for (double v : s) worst = std::max(worst, std::abs(v - s.front()));
  return worst / std::max(std::abs(s.front()), floor);
}

void RunRecord::push(double t, const std::vector<std::pair<std::string, double>>& values) {
  if (names.empty()) {
    for (const auto& [k, v] : values) names.push_back(k);
    series.resize(names.size());
  }
  if (values.size() != names.size()) throw std::logic_error("monitor set changed during a run");
  times.push_back(t);
  for (std::size_t i = 0; i < values.size(); ++i) series[i].push_back(values[i].second);
}

Monitors monitors(const EulerianState& s) {
  return {{"energy", 0.5 * inner(s.u, s.u)}, {"momentum", integral(s.u)}};
}

Monitors monitors(const LagrangianState& s) {
  const GridSpec grid = s.f.grid();
  const Eigen::VectorXd fx = sample(s.f.derivative_field(), grid);
  const Eigen::VectorXd q = sample(s.f_t, grid);
  return {{"energy", 0.5 * trapezoid_sum(q.cwiseProduct(q).cwiseProduct(fx))},
          {"momentum", trapezoid_sum(q.cwiseProduct(fx))},
          {"min_fx", fx.minCoeff()}};
}

Monitors monitors(const VirasoroGeodesicState& s) {
  const double uu = inner(s.u, s.u);
  return {{"momentum", integral(s.u)}, {"casimir", uu}, {"energy", 0.5 * (uu + s.a * s.a)}};
}

Eigen::VectorXd lagrangian_invariant(const LagrangianState& s) {
  const GridSpec grid = s.f.grid();
  const Eigen::ArrayXd fx = sample(s.f.derivative_field(), grid).array();
  return (sample(s.f_t, grid).array() * fx * fx).matrix();
}

PeriodicField eulerian_velocity(const LagrangianState& s, int band) {
  const GridSpec grid{detail::fft_size_at_least(2 * band + 1)};
  Eigen::VectorXd u(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) u(j) = s.f_t(invert_point(s.f, grid.node(j)));
  return analyze(u, band);
}

double spectral_tail_fraction(const PeriodicField& u, double start) {
  const int cut = static_cast<int>(std::floor(start * u.band()));
  double total = 0.0;
  double tail = 0.0;
  for (int k = 1; k <= u.band(); ++k) {
    const double e = std::norm(u.mode(k));
    total += e;
    if (k > cut) tail += e;
  }
  return total > 0 ? tail / total : 0.0;
}

double blowup_time(const PeriodicField& u0) {
  const PeriodicField d1 = deriv(u0);
  const PeriodicField d2 = deriv(u0, 2);
  const PeriodicField d3 = deriv(u0, 3);
  const GridSpec grid{detail::fft_size_at_least(std::max(64, 16 * u0.band() + 1))};
  const Eigen::VectorXd v = sample(d1, grid);
  Eigen::Index j = 0;
  v.minCoeff(&j);
  // polish the minimum of u0' with Newton on u0'' = 0
  double x = grid.node(static_cast<int>(j));
  const double h = kTwoPi / grid.node_count;
  for (int it = 0; it < 30; ++it) {
    const double c = d3(x);
    if (!(c > 0)) break;
    const double next = x - d2(x) / c;
    if (std::abs(next - x) > h) break;
    x = next;
  }
  const double m = std::min(v(j), d1(x));
  if (!(m < 0)) return std::numeric_limits<double>::infinity();
  return -1.0 / (3.0 * m);
}

double characteristics_oracle(const PeriodicField& u0, double t, double x) {
  if (t == 0.0) return u0(x);
  if (t >= blowup_time(u0)) throw std::domain_error("characteristics cross: t is past the blow-up time");
  double bound = std::abs(u0.mode(0).real());
  for (int k = 1; k <= u0.band(); ++k) bound += 2.0 * std::abs(u0.mode(k));
  double lo = x - 3.0 * t * bound - 1e-12;
  double hi = x + 3.0 * t * bound + 1e-12;
  double xi = x - 3.0 * t * u0(x);
  if (!(xi > lo && xi < hi)) xi = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const auto [v, d] = evaluate_with_derivative(u0, xi);
    const double g = xi + 3.0 * t * v - x;
    if (std::abs(g) <= 1e-14 * std::max(1.0, std::abs(x))) break;
    (g > 0 ? hi : lo) = xi;
    double next = xi - g / (1.0 + 3.0 * t * d);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == xi) break;
    xi = next;
  }
  return u0(xi);
}

PeriodicField burgers_rhs(const PeriodicField& u, int band) {
  return -1.5 * deriv(multiply(u, u, ProductMode::dealiased(band)));
}

PeriodicField kdv_nonlinear_rhs(const PeriodicField& u, int band) { return burgers_rhs(u, band); }

FlowResult<LagrangianState> evolve_burgers_lagrangian(const LagrangianState& s0, const StepConfig& cfg,
                                                      const BlowupThresholds& th) {
  check_config(cfg);
  const GridSpec grid = collocation_grid(cfg);
  const int band = (grid.node_count - 1) / 2;
  const Eigen::Index m = grid.node_count;

  // y = [p_j ; q_j] at the nodes
  Eigen::VectorXd y(2 * m);
  y.head(m) = sample(s0.f.displacement(), grid);
  y.tail(m) = sample(s0.f_t, grid);
  auto slope = [&](const Eigen::VectorXd& v) { return sample(deriv(analyze(v, band)), grid); };
  auto rhs = [&](const Eigen::VectorXd& s) {
    Eigen::VectorXd out(2 * m);
    const Eigen::VectorXd q = s.tail(m);
    const Eigen::ArrayXd fx = slope(s.head(m)).array() + 1.0;
    out.head(m) = q;
    out.tail(m) = (-2.0 * q.array() * slope(q).array() / fx).matrix();
    return out;
  };
  auto state_of = [&](double t) {
    return LagrangianState{CircleDiffeo(analyze(Eigen::VectorXd(y.head(m)), band), grid),
                           analyze(Eigen::VectorXd(y.tail(m)), band), t};
  };
  auto invariant = [&](const Eigen::VectorXd& s) {
    const Eigen::ArrayXd fx = slope(s.head(m)).array() + 1.0;
    return Eigen::VectorXd(s.tail(m).array() * fx * fx);
  };
  const Eigen::VectorXd f0 = invariant(y);
  const double f0_scale = std::max(f0.cwiseAbs().maxCoeff(), 1e-300);

  FlowResult<LagrangianState> out{RunRecord{}, s0};
  RunRecord& rec = out.record;
  double min_fx = 1.0 + slope(y.head(m)).minCoeff();
  run_loop(
      cfg, rec, [&](double h) { y = detail::rk4_step(y, h, rhs); },
      [&](double t) {
        const Eigen::VectorXd q = y.tail(m);
        const Eigen::VectorXd fx = slope(y.head(m)).array() + 1.0;
        rec.push(t, {{"energy", 0.5 * trapezoid_sum(q.cwiseProduct(q).cwiseProduct(fx))},
                     {"momentum", trapezoid_sum(q.cwiseProduct(fx))},
                     {"min_fx", fx.minCoeff()},
                     {"F_drift", (invariant(y) - f0).cwiseAbs().maxCoeff() / f0_scale}});
      },
      [&](double t) -> std::pair<RunStatus, std::string> {
        if (!y.allFinite()) return {RunStatus::non_finite, "non-finite state at t = " + std::to_string(t)};
        min_fx = 1.0 + slope(y.head(m)).minCoeff();
        if (min_fx < th.min_fx) {
          return {RunStatus::blowup, "min f_x = " + std::to_string(min_fx) + " below " + std::to_string(th.min_fx) +
                                         " at t = " + std::to_string(t)};
        }
        return {RunStatus::completed, {}};
      },
      [&](double t) { rec.snapshots.push_back({t, analyze(Eigen::VectorXd(y.head(m)), band)}); });
  if (rec.status != RunStatus::non_finite && min_fx > 0) {
    out.final_state = state_of(rec.times.back());
  }
  return out;
}

FlowResult<EulerianState> evolve_burgers_eulerian(const EulerianState& s0, const StepConfig& cfg,
                                                  const BlowupThresholds& th) {
  check_config(cfg);
  const int band = cfg.band;
  Eigen::VectorXcd y = s0.u.with_band(band).modes();
  auto rhs = [&](const Eigen::VectorXcd& v) { return burgers_rhs(PeriodicField(v), band).with_band(band).modes(); };

  FlowResult<EulerianState> out{RunRecord{}, s0};
  RunRecord& rec = out.record;
  run_loop(
      cfg, rec, [&](double h) { y = detail::rk4_step(y, h, rhs); },
      [&](double t) { rec.push(t, monitors(EulerianState{PeriodicField(y), t})); },
      [&](double t) { return spectral_check(PeriodicField(y), th, t); },
      [&](double t) { rec.snapshots.push_back({t, PeriodicField(y)}); });
  out.final_state = EulerianState{PeriodicField(y), rec.times.back()};
  return out;
}

FlowResult<VirasoroGeodesicState> evolve_kdv(const VirasoroGeodesicState& s0, const StepConfig& cfg,
                                             const BlowupThresholds& th) {
  check_config(cfg);
  const int band = cfg.band;
  // u_hat_k' = i a k^3 u_hat_k + N_k
  Eigen::VectorXcd linear(band + 1);
  for (int k = 0; k <= band; ++k) linear(k) = std::complex<double>(0.0, s0.a * k * k * static_cast<double>(k));
  Eigen::VectorXcd y = s0.u.with_band(band).modes();
  auto rhs = [&](const Eigen::VectorXcd& v) {
    return kdv_nonlinear_rhs(PeriodicField(v), band).with_band(band).modes();
  };

  FlowResult<VirasoroGeodesicState> out{RunRecord{}, s0};
  RunRecord& rec = out.record;
  run_loop(
      cfg, rec, [&](double h) { y = detail::lawson_rk4_step(y, h, linear, rhs); },
      [&](double t) { rec.push(t, monitors(VirasoroGeodesicState{PeriodicField(y), s0.a, t})); },
      [&](double t) { return spectral_check(PeriodicField(y), th, t); },
      [&](double t) { rec.snapshots.push_back({t, PeriodicField(y)}); });
  out.final_state = VirasoroGeodesicState{PeriodicField(y), s0.a, rec.times.back()};
  return out;
}

}  // namespace virgeo
