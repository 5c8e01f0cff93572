#include "doctest.h"

#include "support.hpp"
#include "virgeo/jacobi.hpp"

using namespace virgeo;
using virgeo::testing::pi;
using virgeo::testing::random_element;
using virgeo::testing::random_field;
using virgeo::testing::rel;
using virgeo::testing::rel_elem;

namespace {

const PeriodicField sin1 = PeriodicField::sine(1);
const PeriodicField cos1 = PeriodicField::cosine(1);
const PeriodicField zero(0);
const DiffAlgebra diff{};
const VirasoroAlgebra vir{};

StepConfig config(double dt, double T, int band, int record_every = 1) {
  StepConfig c;
  c.dt = dt;
  c.T = T;
  c.band = band;
  c.record_every = record_every;
  return c;
}

double drift(const std::vector<double>& s) {
  double w = 0;
  for (double v : s) w = std::max(w, std::abs(v - s.front()));
  return w / std::max(1.0, std::abs(s.front()));
}

}  // namespace

TEST_CASE("Jacobi right-hand sides: examples") {
  const auto y = random_field(1);
  const auto yt = random_field(2);
  CHECK(element_norm(curvature_form_rhs(diff, zero, y, yt)) < 1e-13);
  CHECK(element_norm(direct_jacobi_rhs(diff, zero, y, yt)) == 0.0);
  // u = sin, y = cos, y_t = 0: -3 sin^2 (-cos) = 3 sin^2 cos
  const auto want = 3.0 * multiply(multiply(sin1, sin1), cos1);
  CHECK(rel_elem(jacobi_diff_rhs(sin1, cos1, zero), want) < 1e-15);
  CHECK(rel_elem(curvature_form_rhs(diff, sin1, cos1, zero), want) < 1e-14);

  // constant Virasoro geodesic
  const VirasoroElement u{PeriodicField::constant(0.5), 1.0};
  const VirasoroElement yy{y, 0.3};
  const VirasoroElement yyt{yt, -0.4};
  const auto r = curvature_form_rhs(vir, u, yy, yyt);
  CHECK(rel_elem(r.h, jacobi_vir_rhs(u.h, 1.0, y, yt, b1_invariant(u.h, y, -0.4))) < 1e-13);
}

TEST_CASE("two derivations of the Jacobi equation agree (X(S^1))") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto u = random_field(s);
    const auto y = random_field(s + 1000);
    const auto yt = random_field(s + 2000);
    const auto closed = jacobi_diff_rhs(u, y, yt);
    CHECK(rel_elem(curvature_form_rhs(diff, u, y, yt), direct_jacobi_rhs(diff, u, y, yt)) < 1e-10);
    CHECK(rel_elem(direct_jacobi_rhs(diff, u, y, yt), closed) < 1e-10);
  }
}

TEST_CASE("two derivations of the Jacobi equation agree (Virasoro)") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto u = random_element(s);
    const auto y = random_element(s + 1000);
    const auto yt = random_element(s + 2000);
    const auto direct = direct_jacobi_rhs(vir, u, y, yt);
    CHECK(rel_elem(curvature_form_rhs(vir, u, y, yt), direct) < 1e-10);
    const double b1 = b1_invariant(u.h, y.h, yt.a);
    CHECK(rel_elem(jacobi_vir_rhs(u.h, u.a, y.h, yt.h, b1), direct.h) < 1e-10);
    CHECK(rel(jacobi_vir_central_rhs(u.h, u.a, y.h, yt.h), direct.a) < 1e-10);
  }
}

TEST_CASE("w-form reproduces the y_tt equation") {
  // y_tt = w_t + [u_t, y] + [u, y_t] with w = y_t - [u, y]
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto u = random_field(s);
    const double a = 0.8;
    const auto y = random_field(s + 10);
    const auto yt = random_field(s + 20);
    const double b1 = 0.3 * static_cast<double>(s);
    const auto w = yt - bracket(u, y);
    const auto u_t = -3.0 * multiply(u, deriv(u)) - a * deriv(u, 3);
    const auto w_t = -3.0 * deriv(multiply(u, w)) - a * deriv(w, 3) - b1 * deriv(u, 3);
    const auto y_tt = w_t + bracket(u_t, y) + bracket(u, yt);
    CHECK(rel_elem(y_tt, jacobi_vir_rhs(u, a, y, yt, b1)) < 1e-12);
  }
}

TEST_CASE("sigma examples") {
  const auto y = random_field(3);
  const auto yt = random_field(4);
  const auto u = random_field(5);
  CHECK(std::abs(sigma_diff(u, y, yt, y, yt)) < 1e-12);
  CHECK(sigma_diff(zero, sin1, zero, zero, sin1) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(std::abs(sigma_diff(zero, sin1, zero, zero, cos1)) < 1e-15);

  const VirJacobiData p{y, 0.4, yt, -0.3};
  CHECK(std::abs(sigma_vir(u, 1.3, p, p)) < 1e-12);
  CHECK(sigma_vir(zero, 0.0, {zero, 1.0, zero, 0.0}, {zero, 0.0, zero, 1.0}) == doctest::Approx(1.0));
  CHECK(sigma_vir(zero, 1.0, {sin1, 0, zero, 0}, {cos1, 0, zero, 0}) == doctest::Approx(pi).epsilon(1e-15));

  const VirJacobiData q{random_field(6), -0.2, random_field(7), 0.9};
  CHECK(rel(sigma_vir(u, 1.3, p, q), -sigma_vir(u, 1.3, q, p)) < 1e-13);
}

TEST_CASE("evolve_jacobi_diff trivial cases") {
  const auto y0 = random_field(1, 5);
  const auto v0 = random_field(2, 5);
  const auto r = evolve_jacobi_diff(zero, y0, v0, config(1e-2, 0.5, 16, 10));
  CHECK(max_norm(r.y.back() - (y0 + 0.5 * v0)) < 1e-13);
  const auto z = evolve_jacobi_diff(sin1, zero, zero, config(1e-2, 0.2, 16));
  CHECK(max_norm(z.y.back()) == 0.0);
}

TEST_CASE("evolve_jacobi_vir trivial cases") {
  const auto y0 = random_field(1, 5);
  const auto v0 = random_field(2, 5);
  const auto r = evolve_jacobi_vir(zero, 0.0, y0, v0, 0.3, 0.7, config(1e-2, 0.5, 16, 10));
  CHECK(max_norm(r.y.back() - (y0 + 0.5 * v0)) < 1e-13);
  CHECK(r.b1 == 0.7);
  CHECK(r.b_closed.back() == doctest::Approx(0.3 + 0.7 * 0.5).epsilon(1e-14));
  CHECK(r.b_integrated.back() == doctest::Approx(0.3 + 0.7 * 0.5).epsilon(1e-14));

  // a pure central variation stays central while u_xxx = 0
  const auto s = evolve_jacobi_vir(PeriodicField::constant(0.5), 1.0, zero, zero, 0.0, 1.0, config(1e-2, 0.5, 16, 10));
  CHECK(max_norm(s.y.back()) == 0.0);
  CHECK(s.b_closed.back() == doctest::Approx(0.5));
  CHECK(s.b_integrated.back() == doctest::Approx(0.5));
}

TEST_CASE("Jacobi evolution is linear in the initial data") {
  const auto y1 = random_field(1, 5), v1 = random_field(2, 5);
  const auto y2 = random_field(3, 5), v2 = random_field(4, 5);
  const auto cfg = config(1e-3, 0.1, 32, 100);
  const auto a = evolve_jacobi_diff(sin1, y1, v1, cfg);
  const auto b = evolve_jacobi_diff(sin1, y2, v2, cfg);
  const auto c = evolve_jacobi_diff(sin1, y1 + 2.0 * y2, v1 + 2.0 * v2, cfg);
  CHECK(max_norm(c.y.back() - (a.y.back() + 2.0 * b.y.back())) < 1e-9);

  const auto p = evolve_jacobi_vir(cos1, 1.0, y1, v1, 0.1, 0.2, cfg);
  const auto q = evolve_jacobi_vir(cos1, 1.0, y2, v2, 0.3, 0.4, cfg);
  const auto r = evolve_jacobi_vir(cos1, 1.0, y1 + 2.0 * y2, v1 + 2.0 * v2, 0.7, 1.0, cfg);
  CHECK(max_norm(r.y.back() - (p.y.back() + 2.0 * q.y.back())) < 1e-9);
  CHECK(std::abs(r.b_integrated.back() - (p.b_integrated.back() + 2.0 * q.b_integrated.back())) < 1e-9);
}

TEST_CASE("sigma is constant along Jacobi pairs") {
  const auto y = random_field(1, 6), yt = random_field(2, 6);
  const auto z = random_field(3, 6), zt = random_field(4, 6);
  const auto cfg = config(1e-4, 0.2, 64, 100);
  const auto s = sigma_series(evolve_jacobi_diff(sin1, y, yt, cfg), evolve_jacobi_diff(sin1, z, zt, cfg));
  CHECK(std::abs(s.front()) > 0.1);
  CHECK(drift(s) <= 1e-6);

  const auto kc = config(1e-3, 1.0, 64, 10);
  const auto sv = sigma_series(evolve_jacobi_vir(cos1, 1.0, y, yt, 0.3, 0.7, kc),
                               evolve_jacobi_vir(cos1, 1.0, z, zt, -0.2, 0.4, kc));
  CHECK(std::abs(sv.front()) > 0.1);
  CHECK(drift(sv) <= 1e-6);
}

TEST_CASE("B1 constancy and the closed form for b") {
  const auto r = evolve_jacobi_vir(cos1, 1.0, random_field(1, 6), random_field(2, 6), 0.3, 0.7,
                                   config(2.5e-4, 1.0, 64, 40));
  double b1 = 0, b = 0;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    b1 = std::max(b1, std::abs(r.b1_series[i] - r.b1));
    b = std::max(b, std::abs(r.b_closed[i] - r.b_integrated[i]));
  }
  CHECK(b1 <= 1e-8);
  CHECK(b <= 1e-6);
}

TEST_CASE("constant_u_mode_oracle") {
  using C = std::complex<double>;
  CHECK(std::abs(constant_u_mode_oracle(0, 0, 3, C(1, 2), C(0.5, -1), 2.0) - C(2, 0)) < 1e-15);
  // c = 0, a = 1, k = 1: y = y0 + y_t0 (e^{it} - 1) / i
  const C y0(0.3, 0.1), v0(-0.2, 0.4);
  const C want = y0 + v0 * (std::exp(C(0, 0.7)) - 1.0) / C(0, 1);
  CHECK(std::abs(constant_u_mode_oracle(0, 1, 1, y0, v0, 0.7) - want) < 1e-14);
  // satisfies the mode ODE (central differences in t)
  for (int k : {1, 2, 3}) {
    const double c = 0.5, a = 1.0, t = 0.4, h = 1e-4;
    auto y = [&](double s) { return constant_u_mode_oracle(c, a, k, y0, v0, s); };
    const C d1 = (y(t + h) - y(t - h)) / (2 * h);
    const C d2 = (y(t + h) - 2.0 * y(t) + y(t - h)) / (h * h);
    const double kk = k;
    const C rhs = (3 * c * c * kk * kk - a * c * kk * kk * kk * kk) * y(t) + C(0, a * kk * kk * kk - 4 * c * kk) * d1;
    CHECK(std::abs(d2 - rhs) < 1e-5 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("constant geodesic: solver against the mode oracle") {
  for (int k : {1, 2, 3}) {
    const auto r = evolve_jacobi_vir(PeriodicField::constant(0.5), 1.0, PeriodicField::cosine(k), zero, 0.0, 0.0,
                                     config(1e-3, 1.0, 64, 100));
    const auto got = r.y.back();
    const auto want = constant_u_mode_oracle(0.5, 1.0, k, 0.5, 0.0, 1.0);
    CHECK(std::abs(got.mode(k) - want) <= 1e-6);
    double rest = 0;
    for (int j = 0; j <= 64; ++j)
      if (j != k) rest = std::max(rest, std::abs(got.mode(j)));
    CHECK(rest < 1e-12);
  }
}

TEST_CASE("w-form and direct integration of the Jacobi equation agree at small band") {
  const auto u0 = 0.5 * random_field(5, 3);
  const auto y0 = random_field(6, 3);
  const auto v0 = random_field(7, 3);
  const auto cfg = config(2e-5, 0.05, 16, 500);
  const auto w = evolve_jacobi_vir(u0, 0.5, y0, v0, 0.2, -0.1, cfg);
  const auto d = evolve_jacobi_vir_direct(u0, 0.5, y0, v0, 0.2, -0.1, cfg);
  REQUIRE(d.status == RunStatus::completed);
  CHECK(max_norm(w.y.back() - d.y.back()) < 1e-10);
  CHECK(std::abs(w.b_integrated.back() - d.b_integrated.back()) < 1e-10);
}

TEST_CASE("variation oracle") {
  const auto cfg = config(1e-4, 0.2, 64, 100);
  const auto vz = variation_oracle(sin1, zero, 1e-3, cfg);
  CHECK(max_norm(vz.y.back()) < 1e-12);

  const auto v0 = variation_oracle(zero, sin1, 1e-3, config(1e-3, 0.2, 32, 10));
  CHECK(max_norm(v0.y.back() - 0.2 * sin1, 256) < 1e-3);

  const auto jac = evolve_jacobi_diff(sin1, zero, cos1, cfg).y.back();
  const auto e1 = relative_l2(variation_oracle(sin1, cos1, 1e-3, cfg).y.back().with_band(64), jac);
  const auto e2 = relative_l2(variation_oracle(sin1, cos1, 5e-4, cfg).y.back().with_band(64), jac);
  CHECK(e1 <= 1e-2);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("norm_minima") {
  std::vector<double> t;
  std::vector<PeriodicField> y;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.01 * i);
    y.push_back(std::sin(pi * t.back() / 0.5) * sin1);
  }
  const auto m = norm_minima(t, y);
  REQUIRE(m.size() == 1);
  CHECK(m[0] == doctest::Approx(0.5));
}

TEST_CASE("covariant derivative is metric compatible along Jacobi pairs") {
  const auto cfg = config(1e-4, 0.05, 64);
  const auto y = evolve_jacobi_diff(sin1, random_field(1, 6), random_field(2, 6), cfg);
  const auto z = evolve_jacobi_diff(sin1, random_field(3, 6), random_field(4, 6), cfg);
  REQUIRE(y.times.size() > 4);
  double worst = 0;
  for (std::size_t i = 1; i + 1 < y.times.size(); ++i) {
    const double h = y.times[i + 1] - y.times[i - 1];
    const double fd = (diff.inner(y.y[i + 1], z.y[i + 1]) - diff.inner(y.y[i - 1], z.y[i - 1])) / h;
    const double cov = diff.inner(covariant_deriv_along_curve(diff, y.u[i], y.y[i], y.y_t[i]), z.y[i]) +
                       diff.inner(y.y[i], covariant_deriv_along_curve(diff, z.u[i], z.y[i], z.y_t[i]));
    worst = std::max(worst, rel(fd, cov));
  }
  CHECK(worst <= 1e-6);
}
