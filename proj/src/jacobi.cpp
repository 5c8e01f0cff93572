#include "virgeo/jacobi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stepper.hpp"

namespace virgeo {

PeriodicField jacobi_diff_rhs(const PeriodicField& u, const PeriodicField& y, const PeriodicField& y_t,
                              ProductMode mode) {
  const PeriodicField uu = multiply(u, u, mode);
  return -3.0 * multiply(uu, deriv(y, 2), mode) - 4.0 * multiply(u, deriv(y_t), mode) -
         2.0 * multiply(deriv(u), y_t, mode);
}

PeriodicField jacobi_vir_rhs(const PeriodicField& u, double a, const PeriodicField& y, const PeriodicField& y_t,
                             double b1, ProductMode mode) {
  const PeriodicField inner_u = 4.0 * deriv(y_t) + 3.0 * multiply(u, deriv(y, 2), mode) + a * deriv(y, 4);
  const PeriodicField inner_ux = 2.0 * y_t + 2.0 * a * deriv(y, 3);
  const PeriodicField inner_uxxx = PeriodicField::constant(b1) - 3.0 * a * deriv(y);
  return -1.0 * multiply(u, inner_u, mode) - multiply(deriv(u), inner_ux, mode) -
         multiply(deriv(u, 3), inner_uxxx, mode) - a * deriv(y_t, 3);
}

double jacobi_vir_central_rhs(const PeriodicField& u, double a, const PeriodicField& y, const PeriodicField& y_t) {
  const PeriodicField y3 = deriv(y, 3);
  return -inner(deriv(y_t, 3), u) + 3.0 * inner(y3, multiply(deriv(u), u)) + a * inner(y3, deriv(u, 3));
}

double b1_invariant(const PeriodicField& u, const PeriodicField& y, double b_t) { return b_t + gelfand_fuchs(y, u); }

double sigma_diff(const PeriodicField& u, const PeriodicField& y, const PeriodicField& y_t, const PeriodicField& z,
                  const PeriodicField& z_t) {
  return inner(y, z_t) - inner(y_t, z) + 2.0 * (inner(u, multiply(y, deriv(z))) - inner(u, multiply(deriv(y), z)));
}

double sigma_vir(const PeriodicField& u, double a, const VirJacobiData& y, const VirJacobiData& z) {
  const double b1 = b1_invariant(u, y.y, y.b_t);
  const double c1 = b1_invariant(u, z.y, z.b_t);
  return sigma_diff(u, y.y, y.y_t, z.y, z.y_t) + y.b * c1 - z.b * b1 - a * gelfand_fuchs(y.y, z.y);
}

namespace {

// Flat complex state: consecutive blocks of band+1 modes, then scalars.
struct Layout {
  int band;
  Eigen::Index block() const { return band + 1; }
  PeriodicField field(const Eigen::VectorXcd& s, int i) const {
    return PeriodicField(PeriodicField::ModeVector(s.segment(i * block(), block())));
  }
  void put(Eigen::VectorXcd& s, int i, const PeriodicField& f) const {
    s.segment(i * block(), block()) = f.with_band(band).modes();
  }
};

std::pair<RunStatus, std::string> check_u(const PeriodicField& u, const BlowupThresholds& th, double t) {
  if (!u.all_finite()) return {RunStatus::non_finite, "non-finite geodesic at t = " + std::to_string(t)};
  if (spectral_tail_fraction(u, th.tail_start) > th.tail_fraction)
    return {RunStatus::blowup, "geodesic spectral tail exceeded at t = " + std::to_string(t)};
  return {RunStatus::completed, {}};
}

void check_cfg(const StepConfig& cfg) {
  if (!(cfg.dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.T >= 0)) throw std::invalid_argument("T must be nonnegative");
  if (cfg.band < 1 || cfg.record_every < 1) throw std::invalid_argument("band and record_every must be positive");
}

}  // namespace

JacobiTrajectoryDiff evolve_jacobi_diff(const PeriodicField& u0, const PeriodicField& y0, const PeriodicField& y_t0,
                                        const StepConfig& cfg, const BlowupThresholds& th) {
  check_cfg(cfg);
  const Layout lay{cfg.band};
  const ProductMode mode = ProductMode::dealiased(cfg.band);
  Eigen::VectorXcd s(3 * lay.block());
  lay.put(s, 0, u0);
  lay.put(s, 1, y0);
  lay.put(s, 2, y_t0);
  auto rhs = [&](const Eigen::VectorXcd& v) {
    const PeriodicField u = lay.field(v, 0);
    const PeriodicField y = lay.field(v, 1);
    const PeriodicField yt = lay.field(v, 2);
    Eigen::VectorXcd out(v.size());
    lay.put(out, 0, burgers_rhs(u, cfg.band));
    lay.put(out, 1, yt);
    lay.put(out, 2, jacobi_diff_rhs(u, y, yt, mode));
    return out;
  };
  JacobiTrajectoryDiff tr;
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.u.push_back(lay.field(s, 0));
    tr.y.push_back(lay.field(s, 1));
    tr.y_t.push_back(lay.field(s, 2));
  };
  record(0.0);
  const long n = step_count(cfg.dt, cfg.T);
  for (long i = 1; i <= n; ++i) {
    const double t = (i == n) ? cfg.T : i * cfg.dt;
    s = detail::rk4_step(s, t - (i - 1) * cfg.dt, rhs);
    const auto [status, why] = check_u(lay.field(s, 0), th, t);
    if (status == RunStatus::completed && !s.allFinite()) {
      tr.status = RunStatus::non_finite;
      tr.diagnostic = "non-finite Jacobi field at t = " + std::to_string(t);
      record(t);
      return tr;
    }
    if (status != RunStatus::completed) {
      tr.status = status;
      tr.diagnostic = why;
      record(t);
      return tr;
    }
    if (i % cfg.record_every == 0 || i == n) record(t);
  }
  return tr;
}

JacobiTrajectoryVir evolve_jacobi_vir(const PeriodicField& u0, double a, const PeriodicField& y0,
                                      const PeriodicField& y_t0, double b0, double b_t0, const StepConfig& cfg,
                                      const BlowupThresholds& th) {
  check_cfg(cfg);
  const Layout lay{cfg.band};
  const ProductMode mode = ProductMode::dealiased(cfg.band);
  const VirasoroAlgebra vir{mode};
  const double b1 = b1_invariant(u0, y0, b_t0);

  // blocks: u, w, y; scalars: b_closed, b_integrated, b_t
  const Eigen::Index nb = lay.block();
  const Eigen::Index sc = 3 * nb;
  Eigen::VectorXcd s(sc + 3);
  lay.put(s, 0, u0);
  lay.put(s, 1, y_t0 - vir.bracket({u0, a}, {y0, b0}).h);
  lay.put(s, 2, y0);
  s(sc) = b0;
  s(sc + 1) = b0;
  s(sc + 2) = b_t0;

  Eigen::VectorXcd linear = Eigen::VectorXcd::Zero(s.size());
  for (int k = 0; k <= cfg.band; ++k) {
    const std::complex<double> l(0.0, a * k * k * static_cast<double>(k));
    linear(k) = l;
    linear(nb + k) = l;
  }
  const PeriodicField zero(0);
  auto y_t_of = [&](const PeriodicField& u, const PeriodicField& w, const PeriodicField& y) {
    return w + multiply(deriv(u), y, mode) - multiply(u, deriv(y), mode);
  };
  auto rhs = [&](const Eigen::VectorXcd& v) {
    const PeriodicField u = lay.field(v, 0);
    const PeriodicField w = lay.field(v, 1);
    const PeriodicField y = lay.field(v, 2);
    const PeriodicField yt = y_t_of(u, w, y);
    Eigen::VectorXcd out(v.size());
    lay.put(out, 0, kdv_nonlinear_rhs(u, cfg.band));
    lay.put(out, 1, -3.0 * deriv(multiply(u, w, mode)) - b1 * deriv(u, 3));
    lay.put(out, 2, yt);
    out(sc) = b1 - gelfand_fuchs(y, u);
    out(sc + 1) = v(sc + 2);
    out(sc + 2) = jacobi_vir_central_rhs(u, a, y, yt);
    return out;
  };

  JacobiTrajectoryVir tr;
  tr.a = a;
  tr.b0 = b0;
  tr.b1 = b1;
  auto record = [&](double t) {
    const PeriodicField u = lay.field(s, 0);
    const PeriodicField y = lay.field(s, 2);
    const PeriodicField yt = y_t_of(u, lay.field(s, 1), y);
    tr.times.push_back(t);
    tr.u.push_back(u);
    tr.y.push_back(y);
    tr.y_t.push_back(yt);
    tr.b_closed.push_back(s(sc).real());
    tr.b_integrated.push_back(s(sc + 1).real());
    tr.b_t.push_back(s(sc + 2).real());
    tr.b1_series.push_back(b1_invariant(u, y, s(sc + 2).real()));
  };
  record(0.0);
  const long n = step_count(cfg.dt, cfg.T);
  for (long i = 1; i <= n; ++i) {
    const double t = (i == n) ? cfg.T : i * cfg.dt;
    s = detail::lawson_rk4_step(s, t - (i - 1) * cfg.dt, linear, rhs);
    auto [status, why] = check_u(lay.field(s, 0), th, t);
    if (status == RunStatus::completed && !s.allFinite()) {
      status = RunStatus::non_finite;
      why = "non-finite Jacobi field at t = " + std::to_string(t);
    }
    if (status != RunStatus::completed) {
      tr.status = status;
      tr.diagnostic = why;
      record(t);
      return tr;
    }
    if (i % cfg.record_every == 0 || i == n) record(t);
  }
  return tr;
}

JacobiTrajectoryVir evolve_jacobi_vir_direct(const PeriodicField& u0, double a, const PeriodicField& y0,
                                             const PeriodicField& y_t0, double b0, double b_t0,
                                             const StepConfig& cfg) {
  check_cfg(cfg);
  const Layout lay{cfg.band};
  const ProductMode mode = ProductMode::dealiased(cfg.band);
  const double b1 = b1_invariant(u0, y0, b_t0);
  const Eigen::Index sc = 3 * lay.block();
  Eigen::VectorXcd s(sc + 2);
  lay.put(s, 0, u0);
  lay.put(s, 1, y0);
  lay.put(s, 2, y_t0);
  s(sc) = b0;
  s(sc + 1) = b_t0;
  auto rhs = [&](const Eigen::VectorXcd& v) {
    const PeriodicField u = lay.field(v, 0);
    const PeriodicField y = lay.field(v, 1);
    const PeriodicField yt = lay.field(v, 2);
    Eigen::VectorXcd out(v.size());
    lay.put(out, 0, kdv_nonlinear_rhs(u, cfg.band) - a * deriv(u, 3));
    lay.put(out, 1, yt);
    lay.put(out, 2, jacobi_vir_rhs(u, a, y, yt, b1, mode));
    out(sc) = v(sc + 1);
    out(sc + 1) = jacobi_vir_central_rhs(u, a, y, yt);
    return out;
  };
  JacobiTrajectoryVir tr;
  tr.a = a;
  tr.b0 = b0;
  tr.b1 = b1;
  auto record = [&](double t) {
    const PeriodicField u = lay.field(s, 0);
    const PeriodicField y = lay.field(s, 1);
    tr.times.push_back(t);
    tr.u.push_back(u);
    tr.y.push_back(y);
    tr.y_t.push_back(lay.field(s, 2));
    tr.b_closed.push_back(std::numeric_limits<double>::quiet_NaN());
    tr.b_integrated.push_back(s(sc).real());
    tr.b_t.push_back(s(sc + 1).real());
    tr.b1_series.push_back(b1_invariant(u, y, s(sc + 1).real()));
  };
  record(0.0);
  const long n = step_count(cfg.dt, cfg.T);
  for (long i = 1; i <= n; ++i) {
    const double t = (i == n) ? cfg.T : i * cfg.dt;
    s = detail::rk4_step(s, t - (i - 1) * cfg.dt, rhs);
    if (!s.allFinite()) {
      tr.status = RunStatus::non_finite;
      tr.diagnostic = "non-finite state at t = " + std::to_string(t);
      return tr;
    }
    if (i % cfg.record_every == 0 || i == n) record(t);
  }
  return tr;
}

std::vector<double> sigma_series(const JacobiTrajectoryDiff& y, const JacobiTrajectoryDiff& z) {
  if (y.times.size() != z.times.size()) throw std::invalid_argument("trajectories sampled differently");
  std::vector<double> out;
  out.reserve(y.times.size());
  for (std::size_t i = 0; i < y.times.size(); ++i) out.push_back(sigma_diff(y.u[i], y.y[i], y.y_t[i], z.y[i], z.y_t[i]));
  return out;
}

std::vector<double> sigma_series(const JacobiTrajectoryVir& y, const JacobiTrajectoryVir& z) {
  if (y.times.size() != z.times.size()) throw std::invalid_argument("trajectories sampled differently");
  std::vector<double> out;
  out.reserve(y.times.size());
  for (std::size_t i = 0; i < y.times.size(); ++i) {
    const VirJacobiData p{y.y[i], y.b_integrated[i], y.y_t[i], y.b_t[i]};
    const VirJacobiData q{z.y[i], z.b_integrated[i], z.y_t[i], z.b_t[i]};
    out.push_back(sigma_vir(y.u[i], y.a, p, q));
  }
  return out;
}

std::complex<double> constant_u_mode_oracle(double c, double a, int k, std::complex<double> y0,
                                            std::complex<double> y_t0, double t) {
  using C = std::complex<double>;
  const double kk = k;
  const C A = 3.0 * c * c * kk * kk - a * c * kk * kk * kk * kk;
  const C B = C(0.0, a * kk * kk * kk - 4.0 * c * kk);
  // y = e^{Bt/2} (y0 cosh(st) + (y_t0 - B y0 / 2) sinh(st)/s), s^2 = B^2/4 + A
  const C s = std::sqrt(0.25 * B * B + A);
  const C z = s * t;
  C ch;
  C sh_over_s;
  if (std::abs(z) < 1e-3) {
    const C z2 = z * z;
    ch = 1.0 + z2 / 2.0 + z2 * z2 / 24.0 + z2 * z2 * z2 / 720.0;
    sh_over_s = t * (1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0);
  } else {
    ch = std::cosh(z);
    sh_over_s = std::sinh(z) / s;
  }
  return std::exp(0.5 * B * t) * (y0 * ch + (y_t0 - 0.5 * B * y0) * sh_over_s);
}

VariationResult variation_oracle(const PeriodicField& u0, const PeriodicField& v, double eps, const StepConfig& cfg,
                                 GridSpec group_grid) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  StepConfig every = cfg;
  every.record_every = 1;
  every.snapshot_every = 1;
  const auto base = evolve_burgers_eulerian({u0, 0.0}, every);
  const auto pert = evolve_burgers_eulerian({u0 + eps * v, 0.0}, every);
  for (const auto* r : {&base, &pert})
    if (r->record.status != RunStatus::completed)
      throw std::runtime_error("variation_oracle: geodesic halted: " + r->record.diagnostic);
  VelocityPath pb{cfg.dt, {}};
  VelocityPath pp{cfg.dt, {}};
  for (const auto& snap : base.record.snapshots) pb.samples.push_back(snap.field);
  for (const auto& snap : pert.record.snapshots) pp.samples.push_back(snap.field);
  const DiffeoPath gb = reconstruct(pb, group_grid);
  const DiffeoPath gp = reconstruct(pp, group_grid);

  const int band = (group_grid.node_count - 1) / 2;
  VariationResult out;
  for (std::size_t i = 0; i < gb.samples.size(); ++i) {
    const bool last = i + 1 == gb.samples.size();
    if (!(i % static_cast<std::size_t>(cfg.record_every) == 0 || last)) continue;
    Eigen::VectorXd y(group_grid.node_count);
    const PeriodicField diff = (1.0 / eps) * (gp.samples[i].displacement() - gb.samples[i].displacement());
    for (int j = 0; j < group_grid.node_count; ++j)
      y(j) = evaluate_with_derivative(diff, invert_point(gb.samples[i], group_grid.node(j))).first;
    out.times.push_back(base.record.snapshots[i].t);
    out.y.push_back(analyze(y, band));
  }
  return out;
}

std::vector<double> norm_minima(const std::vector<double>& times, const std::vector<PeriodicField>& y,
                                double rel_floor) {
  std::vector<double> out;
  double running = 0.0;
  std::vector<double> n(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) n[i] = l2_norm(y[i]);
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    running = std::max(running, n[i - 1]);
    if (n[i] < n[i - 1] && n[i] <= n[i + 1] && n[i] < rel_floor * running) out.push_back(times[i]);
  }
  return out;
}

}  // namespace virgeo
