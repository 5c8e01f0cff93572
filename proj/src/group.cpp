#include "virgeo/group.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace virgeo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int band_for_grid(const GridSpec& grid) { return (grid.node_count - 1) / 2; }

GridSpec finer(const GridSpec& a, const GridSpec& b) { return a.node_count >= b.node_count ? a : b; }

double evaluate(const PeriodicField& f, double x) { return evaluate_with_derivative(f, x).first; }

/// Upper bound on max |p| from the mode magnitudes.
double sup_bound(const PeriodicField& p) {
  double s = std::abs(p.mode(0).real());
  for (int k = 1; k <= p.band(); ++k) s += 2.0 * std::abs(p.mode(k));
  return s;
}

}  // namespace

std::pair<double, double> evaluate_with_derivative(const PeriodicField& f, double x) {
  using C = std::complex<double>;
  const C z = std::polar(1.0, x);
  C zk(1.0, 0.0);
  double value = f.mode(0).real();
  double slope = 0.0;
  for (int k = 1; k <= f.band(); ++k) {
    // Re-anchor the recurrence periodically to bound phase drift.
    zk = (k % 32 == 0) ? std::polar(1.0, k * x) : zk * z;
    const C term = f.mode(k) * zk;
    value += 2.0 * term.real();
    slope -= 2.0 * k * term.imag();
  }
  return {value, slope};
}

CircleDiffeo::CircleDiffeo() : CircleDiffeo(PeriodicField(0)) {}

CircleDiffeo::CircleDiffeo(PeriodicField displacement, GridSpec grid) : p_(std::move(displacement)), grid_(grid) {
  if (!grid_.resolves(p_.band())) grid_ = GridSpec{detail::fft_size_at_least(2 * p_.band() + 1)};
  if (!p_.all_finite()) throw NotMonotone("diffeomorphism displacement is not finite");
  const double m = min_derivative();
  if (!(m > 0.0)) {
    throw NotMonotone("phi' = 1 + p' reaches " + std::to_string(m) + " on a " + std::to_string(grid_.node_count) +
                      "-node grid; not an orientation-preserving diffeomorphism");
  }
}

CircleDiffeo CircleDiffeo::identity(GridSpec grid) { return CircleDiffeo(PeriodicField(0), grid); }

CircleDiffeo CircleDiffeo::rotation(double shift, GridSpec grid) {
  return CircleDiffeo(PeriodicField::constant(shift), grid);
}

CircleDiffeo CircleDiffeo::from_node_displacements(const Eigen::VectorXd& values) {
  const GridSpec grid{static_cast<int>(values.size())};
  return CircleDiffeo(analyze(values, band_for_grid(grid)), grid);
}

double CircleDiffeo::derivative(double x) const { return 1.0 + evaluate_with_derivative(p_, x).second; }

PeriodicField CircleDiffeo::derivative_field() const { return PeriodicField::constant(1.0) + deriv(p_); }

double CircleDiffeo::min_derivative() const { return 1.0 + sample(deriv(p_), grid_).minCoeff(); }

Eigen::VectorXd CircleDiffeo::node_displacements() const { return sample(p_, grid_); }

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  const GridSpec grid = finer(phi.grid(), psi.grid());
  const Eigen::VectorXd inner_disp = sample(psi.displacement(), grid);
  Eigen::VectorXd out(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) {
    const double y = grid.node(j) + inner_disp(j);
    out(j) = inner_disp(j) + evaluate(phi.displacement(), y);
  }
  try {
    return CircleDiffeo::from_node_displacements(out);
  } catch (const NotMonotone& e) {
    throw NotMonotone(std::string("composition lost monotonicity (resolution too low?): ") + e.what());
  }
}

double invert_point(const CircleDiffeo& phi, double x) {
  const PeriodicField& p = phi.displacement();
  const double bound = sup_bound(p) + 1e-12;
  double lo = x - bound;
  double hi = x + bound;
  double y = x - evaluate(p, x);
  if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const auto [pv, pd] = evaluate_with_derivative(p, y);
    const double g = y + pv - x;
    if (std::abs(g) <= 1e-12) return y;
    if (g > 0) {
      hi = y;
    } else {
      lo = y;
    }
    const double slope = 1.0 + pd;
    double next = slope > 0 ? y - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-16 * std::max(1.0, std::abs(y))) return next;
    y = next;
  }
  throw InversionFailure("inversion did not converge at x = " + std::to_string(x) + " (non-monotone input?)");
}

CircleDiffeo invert(const CircleDiffeo& phi) {
  const GridSpec& grid = phi.grid();
  Eigen::VectorXd out(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) {
    const double x = grid.node(j);
    out(j) = invert_point(phi, x) - x;
  }
  return CircleDiffeo::from_node_displacements(out);
}

PeriodicField inversion_derivative(const CircleDiffeo& g, const PeriodicField& h) {
  GridSpec grid = g.grid();
  if (!grid.resolves(h.band())) grid = GridSpec{detail::fft_size_at_least(2 * h.band() + 1)};
  Eigen::VectorXd out(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) {
    const double y = invert_point(g, grid.node(j));
    out(j) = -evaluate(h, y) / g.derivative(y);
  }
  return analyze(out, band_for_grid(grid));
}

double bott_cocycle(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  const GridSpec grid{2 * finer(phi.grid(), psi.grid()).node_count};
  const PeriodicField& q = psi.displacement();
  const Eigen::VectorXd q0 = sample(q, grid);
  const Eigen::VectorXd q1 = sample(deriv(q), grid);
  const Eigen::VectorXd q2 = sample(deriv(q, 2), grid);
  double acc = 0.0;
  for (int j = 0; j < grid.node_count; ++j) {
    const double outer_slope = phi.derivative(grid.node(j) + q0(j));
    const double inner_slope = 1.0 + q1(j);
    if (!(outer_slope > 0.0 && inner_slope > 0.0)) throw NotMonotone("bott_cocycle: non-monotone argument");
    acc += std::log(outer_slope) * q2(j) / inner_slope;
  }
  return acc * kTwoPi / grid.node_count;
}

double max_distance(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  const GridSpec grid = finer(phi.grid(), psi.grid());
  return (sample(phi.displacement(), grid) - sample(psi.displacement(), grid)).cwiseAbs().maxCoeff();
}

double wrap_angle(double theta) {
  double r = theta - std::floor(theta);
  if (r >= 1.0) r = 0.0;
  return r;
}

double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 1.0 - d);
}

VirasoroBottElement::VirasoroBottElement(CircleDiffeo diffeo, double angle)
    : phi(std::move(diffeo)), theta(wrap_angle(angle)) {}

VirasoroBottElement vb_multiply(const VirasoroBottElement& g1, const VirasoroBottElement& g2) {
  return {compose(g1.phi, g2.phi), g1.theta + g2.theta + bott_cocycle(g1.phi, g2.phi)};
}

VirasoroBottElement vb_invert(const VirasoroBottElement& g) { return {invert(g.phi), -g.theta}; }

VelocityPath right_log_derivative(const DiffeoPath& path) {
  const auto& s = path.samples;
  if (s.size() < 2) throw std::invalid_argument("right_log_derivative needs at least two samples");
  if (!(path.dt > 0)) throw std::invalid_argument("right_log_derivative needs dt > 0");
  const GridSpec grid = s.front().grid();
  std::vector<Eigen::VectorXd> disp;
  disp.reserve(s.size());
  for (const auto& g : s) {
    if (g.grid().node_count != grid.node_count) throw std::invalid_argument("path samples must share one grid");
    disp.push_back(g.node_displacements());
  }
  const std::size_t n = s.size();
  VelocityPath out{path.dt, {}};
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd ft;
    if (n == 2) {
      ft = (disp[1] - disp[0]) / path.dt;
    } else if (i == 0) {
      ft = (-3.0 * disp[0] + 4.0 * disp[1] - disp[2]) / (2.0 * path.dt);
    } else if (i == n - 1) {
      ft = (3.0 * disp[n - 1] - 4.0 * disp[n - 2] + disp[n - 3]) / (2.0 * path.dt);
    } else {
      ft = (disp[i + 1] - disp[i - 1]) / (2.0 * path.dt);
    }
    const PeriodicField ft_field = analyze(ft, band_for_grid(grid));
    Eigen::VectorXd u(grid.node_count);
    for (int j = 0; j < grid.node_count; ++j) u(j) = evaluate(ft_field, invert_point(s[i], grid.node(j)));
    out.samples.push_back(analyze(u, band_for_grid(grid)));
  }
  return out;
}

DiffeoPath reconstruct(const VelocityPath& path, GridSpec grid) {
  const auto& u = path.samples;
  if (u.empty()) throw std::invalid_argument("reconstruct needs a non-empty velocity path");
  const std::size_t n = u.size();
  auto midpoint = [&](std::size_t i) -> PeriodicField {
    // velocity at t_i + dt/2
    if (n < 4) return 0.5 * (u[i] + u[i + 1]);
    if (i == 0) return (5.0 * u[0] + 15.0 * u[1] - 5.0 * u[2] + u[3]) * (1.0 / 16.0);
    if (i + 2 >= n) return (u[i - 2] - 5.0 * u[i - 1] + 15.0 * u[i] + 5.0 * u[i + 1]) * (1.0 / 16.0);
    return (-1.0 * u[i - 1] + 9.0 * u[i] + 9.0 * u[i + 1] - u[i + 2]) * (1.0 / 16.0);
  };
  auto velocity = [](const PeriodicField& field, const Eigen::VectorXd& x) {
    Eigen::VectorXd v(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) v(j) = evaluate(field, x(j));
    return v;
  };

  Eigen::VectorXd nodes(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) nodes(j) = grid.node(j);
  Eigen::VectorXd x = nodes;
  DiffeoPath out{path.dt, {}};
  out.samples.reserve(n);
  out.samples.push_back(CircleDiffeo::identity(grid));
  const double h = path.dt;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const PeriodicField mid = midpoint(i);
    const Eigen::VectorXd k1 = velocity(u[i], x);
    const Eigen::VectorXd k2 = velocity(mid, x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = velocity(mid, x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = velocity(u[i + 1], x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    try {
      out.samples.push_back(CircleDiffeo::from_node_displacements(x - nodes));
    } catch (const NotMonotone& e) {
      throw NotMonotone("group curve lost monotonicity at t = " + std::to_string((i + 1) * h) +
                        " (geodesic incompleteness): " + e.what());
    }
  }
  return out;
}

}  // namespace virgeo
