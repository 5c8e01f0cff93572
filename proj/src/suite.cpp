#include "virgeo/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "virgeo/geometry.hpp"
#include "virgeo/lagrangian.hpp"

namespace virgeo {

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

template <typename E>
double rel_elem(const E& got, const E& want) {
  return element_distance(got, want) / std::max(1.0, element_norm(want));
}

PeriodicField rf(std::uint64_t seed, int band = 8) { return random_band_limited(band, seed, 2.0); }

VirasoroElement re(std::uint64_t seed) {
  return {rf(seed), 2.0 * random_band_limited(0, seed ^ 0x5851f42d4c957f2dULL, 1.0).mode(0).real()};
}

CircleDiffeo rd(std::uint64_t seed) {
  PeriodicField p = rf(seed, 6);
  p *= 0.5 / sample(deriv(p), GridSpec{512}).cwiseAbs().maxCoeff();
  return CircleDiffeo(p, GridSpec{512});
}

class Collector {
 public:
  explicit Collector(SuiteReport& r) : report_(r) {}
  void add(const std::string& name, double tolerance, double residual) {
    report_.checks.push_back({name, tolerance, residual, std::isfinite(residual) && residual <= tolerance});
  }

 private:
  SuiteReport& report_;
};

void identities(Collector& c, std::uint64_t seed) {
  const DiffAlgebra diff{};
  const VirasoroAlgebra vir{};
  double adj_d = 0, adj_v = 0, ops = 0, hom = 0, jac = 0, gf = 0;
  for (std::uint64_t s = seed; s < seed + 100; ++s) {
    const auto x = rf(s), y = rf(s + 300), z = rf(s + 600);
    adj_d = std::max(adj_d, rel(diff.inner(diff.bracket(x, y), z), diff.inner(y, diff.ad_transpose(x, z))));
    const auto xi = re(s), eta = re(s + 300), zeta = re(s + 600);
    adj_v = std::max(adj_v, rel(vir.inner(vir.bracket(xi, eta), zeta), vir.inner(eta, vir.ad_transpose(xi, zeta))));
    ops = std::max(ops, rel_elem(ad_transpose(x, z) + bracket(x, z), PeriodicField(3.0 * multiply(deriv(x), z))));
    ops = std::max(ops, rel_elem(ad_transpose(x, z) - bracket(x, z), alpha(x, z)));
    hom = std::max(hom, rel_elem(PeriodicField(-0.5 * alpha(bracket(x, y), z)),
                                 PeriodicField(0.25 * (alpha(x, alpha(y, z)) - alpha(y, alpha(x, z))))));
    const auto j = vir.bracket(vir.bracket(xi, eta), zeta) + vir.bracket(vir.bracket(eta, zeta), xi) +
                   vir.bracket(vir.bracket(zeta, xi), eta);
    jac = std::max(jac, element_norm(j) / std::max(1.0, element_norm(vir.bracket(vir.bracket(xi, eta), zeta))));
    gf = std::max(gf, std::abs(gelfand_fuchs(bracket(x, y), z) + gelfand_fuchs(bracket(y, z), x) +
                               gelfand_fuchs(bracket(z, x), y)));
  }
  c.add("adjointness X(S^1)", 1e-11, adj_d);
  c.add("adjointness Virasoro", 1e-11, adj_v);
  c.add("ad^T +- ad identities", 1e-11, ops);
  c.add("-alpha/2 homomorphism", 1e-11, hom);
  c.add("Virasoro Jacobi identity", 1e-11, jac);
  c.add("Gelfand-Fuchs cocycle identity", 1e-11, gf);

  double cyc = 0, inv = 0, assoc = 0;
  for (std::uint64_t s = seed; s < seed + 10; ++s) {
    const auto a = rd(s), b = rd(s + 100), d = rd(s + 200);
    cyc = std::max(cyc, std::abs(bott_cocycle(compose(a, b), d) + bott_cocycle(a, b) - bott_cocycle(a, compose(b, d)) -
                                 bott_cocycle(b, d)));
    inv = std::max(inv, std::abs(bott_cocycle(a, invert(a))));
    const VirasoroBottElement g1(a, 0.2), g2(b, 0.5), g3(d, 0.9);
    const auto l = vb_multiply(vb_multiply(g1, g2), g3);
    const auto r = vb_multiply(g1, vb_multiply(g2, g3));
    assoc = std::max({assoc, max_distance(l.phi, r.phi), angle_distance(l.theta, r.theta)});
  }
  c.add("Bott cocycle identity", 1e-8, cyc);
  c.add("Bott c(phi, phi^-1) = 0", 1e-8, inv);
  c.add("Virasoro-Bott associativity", 1e-9, assoc);
}

void curvature(Collector& c, std::uint64_t seed) {
  for (auto [a1, a2] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}, std::pair{0.5, -1.0}}) {
    const double want = -kPi * (8.0 + a1 * a1 + a2 * a2 - 3.0 * kPi);
    const double got = sectional_vb(VirasoroElement{PeriodicField::sine(1), a1}, VirasoroElement{PeriodicField::cosine(1), a2});
    c.add("sectional closed form at (" + io::format_number(a1) + "," + io::format_number(a2) + ")", 1e-9,
          std::abs(got - want) / std::abs(want));
  }
  const double r0 = std::sqrt(3.0 * kPi - 8.0);
  const double inside = sectional_vb(VirasoroElement{PeriodicField::sine(1), 0.9 * r0}, VirasoroElement{PeriodicField::cosine(1), 0.0});
  const double outside = sectional_vb(VirasoroElement{PeriodicField::sine(1), 1.1 * r0}, VirasoroElement{PeriodicField::cosine(1), 0.0});
  c.add("sectional sign change across a1^2 + a2^2 = 3 pi - 8", 0.0, (inside > 0 && outside < 0) ? 0.0 : 1.0);

  const DiffAlgebra diff{};
  const VirasoroAlgebra vir{};
  double oq_d = 0, oq_v = 0, cf_d = 0, cf_v = 0, bi = 0, tr = 0;
  for (std::uint64_t s = seed; s < seed + 100; ++s) {
    const auto x = rf(s), y = rf(s + 1000), z = rf(s + 2000), u = rf(s + 3000);
    const auto r = curvature_operator(diff, x, y, z);
    oq_d = std::max(oq_d, rel(diff.inner(r, u), curvature_quadruple(diff, x, y, z, u)));
    cf_d = std::max(cf_d, rel_elem(diff_curvature(x, y, z), r));
    const auto X = re(s), Y = re(s + 1000), Z = re(s + 2000), U = re(s + 3000);
    const auto rv = curvature_operator(vir, X, Y, Z);
    oq_v = std::max(oq_v, rel(vir.inner(rv, U), curvature_quadruple(vir, X, Y, Z, U)));
    cf_v = std::max(cf_v, rel_elem(vir_curvature(X, Y, Z), rv));
    bi = std::max(bi, element_norm(rv + curvature_operator(vir, Y, Z, X) + curvature_operator(vir, Z, X, Y)) /
                          std::max(1.0, element_norm(rv)));
    if (s < seed + 50) tr = std::max(tr, rel_elem(curvature_lagrangian(CircleDiffeo{}, x, y, z), diff_curvature(x, y, z)));
  }
  c.add("operator vs quadruple X(S^1)", 1e-10, oq_d);
  c.add("operator vs quadruple Virasoro", 1e-10, oq_v);
  c.add("operator vs closed form X(S^1)", 1e-10, cf_d);
  c.add("operator vs closed form Virasoro", 1e-10, cf_v);
  c.add("first Bianchi identity Virasoro", 1e-10, bi);
  c.add("Lagrangian curvature at identity", 1e-10, tr);
}

void symplectic(Collector& c, std::uint64_t seed) {
  const DiffAlgebra diff{};
  const VirasoroAlgebra vir{};
  double two_d = 0, two_v = 0;
  for (std::uint64_t s = seed; s < seed + 100; ++s) {
    const auto u = rf(s), y = rf(s + 1000), yt = rf(s + 2000);
    two_d = std::max(two_d, rel_elem(curvature_form_rhs(diff, u, y, yt), jacobi_diff_rhs(u, y, yt)));
    const auto U = re(s), Y = re(s + 1000), YT = re(s + 2000);
    const auto direct = direct_jacobi_rhs(vir, U, Y, YT);
    two_v = std::max({two_v, rel_elem(curvature_form_rhs(vir, U, Y, YT), direct),
                      rel_elem(jacobi_vir_rhs(U.h, U.a, Y.h, YT.h, b1_invariant(U.h, Y.h, YT.a)), direct.h)});
  }
  c.add("Jacobi two-derivation X(S^1)", 1e-10, two_d);
  c.add("Jacobi two-derivation Virasoro", 1e-10, two_v);

  auto drift = [](const std::vector<double>& s) {
    double w = 0;
    for (double v : s) w = std::max(w, std::abs(v - s.front()));
    return w / std::max(1.0, std::abs(s.front()));
  };
  StepConfig bc;
  bc.dt = 1e-4;
  bc.T = 0.2;
  bc.band = 64;
  bc.record_every = 100;
  const auto u0 = PeriodicField::sine(1);
  const auto a = evolve_jacobi_diff(u0, rf(seed + 1, 6), rf(seed + 2, 6), bc);
  const auto b = evolve_jacobi_diff(u0, rf(seed + 3, 6), rf(seed + 4, 6), bc);
  c.add("sigma drift along Burgers", 1e-6, drift(sigma_series(a, b)));

  StepConfig kc;
  kc.dt = 2.5e-4;
  kc.T = 1.0;
  kc.band = 64;
  kc.record_every = 40;
  const auto v0 = PeriodicField::cosine(1);
  const auto p = evolve_jacobi_vir(v0, 1.0, rf(seed + 1, 6), rf(seed + 2, 6), 0.3, 0.7, kc);
  const auto q = evolve_jacobi_vir(v0, 1.0, rf(seed + 3, 6), rf(seed + 4, 6), -0.2, 0.4, kc);
  c.add("sigma drift along KdV", 1e-6, drift(sigma_series(p, q)));
  double b1 = 0, bb = 0;
  for (std::size_t i = 0; i < p.times.size(); ++i) {
    b1 = std::max(b1, std::abs(p.b1_series[i] - p.b1));
    bb = std::max(bb, std::abs(p.b_closed[i] - p.b_integrated[i]));
  }
  c.add("B1 constancy", 1e-8, b1);
  c.add("b closed form vs integrated", 1e-6, bb);
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

io::Json SuiteReport::to_json() const {
  io::Json list = io::Json::array();
  for (const auto& c : checks)
    list.push_back({{"check", c.name}, {"tolerance", c.tolerance}, {"residual", c.residual}, {"pass", c.pass}});
  return {{"suite", suite}, {"pass", passed()}, {"checks", list}};
}

std::vector<std::string> suite_names() { return {"identities", "curvature", "symplectic", "all"}; }

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  SuiteReport report{suite, {}};
  Collector c(report);
  if (suite == "identities" || suite == "all") identities(c, seed);
  if (suite == "curvature" || suite == "all") curvature(c, seed);
  if (suite == "symplectic" || suite == "all") symplectic(c, seed);
  if (report.checks.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
  return report;
}

}  // namespace virgeo
