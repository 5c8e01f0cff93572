#include "doctest.h"

#include "support.hpp"
#include "virgeo/geometry.hpp"

using namespace virgeo;
using virgeo::testing::pi;
using virgeo::testing::random_element;
using virgeo::testing::random_field;
using virgeo::testing::rel;
using virgeo::testing::rel_elem;

namespace {

const PeriodicField sin1 = PeriodicField::sine(1);
const PeriodicField cos1 = PeriodicField::cosine(1);
const PeriodicField one = PeriodicField::constant(1.0);
const PeriodicField zero(0);
const DiffAlgebra diff{};
const VirasoroAlgebra vir{};

double sectional_closed_form(double a1, double a2) { return -pi * (8.0 + a1 * a1 + a2 * a2 - 3.0 * pi); }

}  // namespace

TEST_CASE("covariant derivative along a curve") {
  const auto y = random_field(1);
  const auto yt = random_field(2);
  CHECK(rel_elem(covariant_deriv_along_curve(diff, zero, y, yt), yt) < 1e-15);
  CHECK(rel_elem(covariant_deriv_along_curve(diff, sin1, sin1, zero), PeriodicField::sine(2, 1.5)) < 1e-15);

  const auto k = random_field(3);
  const auto r = covariant_deriv_along_curve(vir, VirasoroElement::central(1.0), VirasoroElement{k, 0.4},
                                             VirasoroElement{zero, 0.0});
  CHECK(rel_elem(r, VirasoroElement{0.5 * deriv(k, 3), 0.0}) < 1e-15);

  // y = u, y_t = 0 gives ad(u)^T u
  const auto u = random_element(4);
  CHECK(rel_elem(covariant_deriv_along_curve(vir, u, u, VirasoroElement{}), vir.ad_transpose(u, u)) < 1e-12);
}

TEST_CASE("curvature_operator examples") {
  const auto x = random_field(5);
  const auto z = random_field(6);
  CHECK(element_norm(curvature_operator(diff, x, x, z)) < 1e-12);
  CHECK(rel_elem(curvature_operator(diff, sin1, cos1, z), -2.0 * deriv(z)) < 1e-13);

  const auto v = curvature_operator(vir, VirasoroElement{sin1, 0}, VirasoroElement{cos1, 0}, VirasoroElement::central(1.0));
  CHECK(element_norm(v) < 1e-13);
}

TEST_CASE("curvature_quadruple examples") {
  const auto x = random_field(7);
  const auto z = random_field(8);
  const auto u = random_field(9);
  CHECK(std::abs(curvature_quadruple(diff, x, x, z, u)) < 1e-11);
  CHECK(std::abs(curvature_quadruple(diff, x, u, z, z)) < 1e-11);
  CHECK(curvature_quadruple(diff, sin1, cos1, sin1, cos1) == doctest::Approx(-2.0 * pi).epsilon(1e-13));
}

TEST_CASE("diff_curvature examples") {
  const auto x = random_field(10);
  const auto z = random_field(11);
  CHECK(rel_elem(diff_curvature(sin1, cos1, sin1), -2.0 * cos1) < 1e-15);
  CHECK(element_norm(diff_curvature(x, x, z)) < 1e-13);
  const auto expected = 2.0 * multiply(cos1, deriv(z)) - multiply(sin1, z);
  CHECK(rel_elem(diff_curvature(one, sin1, z), expected) < 1e-14);
}

TEST_CASE("vir_curvature examples") {
  const auto xi = random_element(12);
  const auto zeta = random_element(13);
  CHECK(element_norm(vir_curvature(xi, xi, zeta)) < 1e-12);

  const VirasoroElement s{sin1, 0};
  const VirasoroElement c{cos1, 0};
  CHECK(rel_elem(vir_curvature(s, c, s), curvature_operator(vir, s, c, s)) < 1e-12);

  // Zero central parts: the omega-coupled terms still act.
  const VirasoroElement h{random_field(14), 0};
  const VirasoroElement k{random_field(15), 0};
  const VirasoroElement l{random_field(16), 0};
  CHECK(rel_elem(vir_curvature(h, k, l), curvature_operator(vir, h, k, l)) < 1e-11);
}

TEST_CASE("sectional_vb closed form") {
  for (auto [a1, a2] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}, std::pair{0.5, -1.0}, std::pair{-3.0, 0.25}}) {
    const VirasoroElement x1{sin1, a1};
    const VirasoroElement x2{cos1, a2};
    const double want = sectional_closed_form(a1, a2);
    CHECK(rel(sectional_vb(x1, x2), want, 1e-300) < 1e-12);
    CHECK(rel(4.0 * curvature_quadruple(vir, x1, x2, x1, x2), want, 1e-300) < 1e-11);
  }
  CHECK(sectional_closed_form(0, 0) > 0);
  CHECK(sectional_closed_form(1, 2) < 0);

  const auto xi = random_element(20);
  CHECK(std::abs(sectional_vb(xi, 2.5 * xi)) < 1e-9);
  CHECK(std::isnan(normalized_sectional(vir, xi, 2.5 * xi)));
}

TEST_CASE("sectional_vb equals four times the quadruple on random planes") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto x1 = random_element(s);
    const auto x2 = random_element(s + 77);
    const double q = 4.0 * curvature_quadruple(vir, x1, x2, x1, x2);
    CHECK(rel(sectional_vb(x1, x2), q) < 1e-10);
  }
}

TEST_CASE("normalized sectional uses the textbook slot order") {
  const VirasoroElement x1{sin1, 0.0};
  const VirasoroElement x2{cos1, 0.0};
  const double area = pi * pi;
  CHECK(normalized_sectional(vir, x1, x2) == doctest::Approx(-sectional_vb(x1, x2) / 4.0 / area).epsilon(1e-12));
}

TEST_CASE("curvature symmetries and cross-formula agreement (X(S^1))") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto x = random_field(s);
    const auto y = random_field(s + 1000);
    const auto z = random_field(s + 2000);
    const auto u = random_field(s + 3000);
    const auto r = curvature_operator(diff, x, y, z);
    const double q = curvature_quadruple(diff, x, y, z, u);
    CHECK(rel(diff.inner(r, u), q) < 1e-10);
    CHECK(rel(curvature_quadruple(diff, z, u, x, y), q) < 1e-10);
    CHECK(rel(curvature_quadruple(diff, y, x, z, u), -q) < 1e-10);
    CHECK(rel(curvature_quadruple(diff, x, y, u, z), -q) < 1e-10);
    const auto bianchi = r + curvature_operator(diff, y, z, x) + curvature_operator(diff, z, x, y);
    CHECK(element_norm(bianchi) < 1e-10 * std::max(1.0, element_norm(r)));
    CHECK(rel_elem(diff_curvature(x, y, z), r) < 1e-11);
  }
}

TEST_CASE("curvature symmetries and cross-formula agreement (Virasoro)") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto x = random_element(s);
    const auto y = random_element(s + 1000);
    const auto z = random_element(s + 2000);
    const auto u = random_element(s + 3000);
    const auto r = curvature_operator(vir, x, y, z);
    const double q = curvature_quadruple(vir, x, y, z, u);
    CHECK(rel(vir.inner(r, u), q) < 1e-10);
    CHECK(rel(curvature_quadruple(vir, z, u, x, y), q) < 1e-10);
    const auto bianchi = r + curvature_operator(vir, y, z, x) + curvature_operator(vir, z, x, y);
    CHECK(element_norm(bianchi) < 1e-10 * std::max(1.0, element_norm(r)));
    CHECK(rel_elem(vir_curvature(x, y, z), r) < 1e-11);
  }
}

TEST_CASE("evaluate_curvature report") {
  const auto rep = evaluate_curvature(random_element(1), random_element(2), random_element(3), random_element(4));
  CHECK(rep.operator_vs_quadruple >= 0);
  CHECK(rep.operator_vs_quadruple < 1e-10);
  CHECK(rep.operator_vs_closed_form < 1e-11);
}
