#include "doctest.h"

#include "support.hpp"
#include "virgeo/geometry.hpp"
#include "virgeo/lagrangian.hpp"

using namespace virgeo;
using virgeo::testing::random_diffeo;
using virgeo::testing::random_field;
using virgeo::testing::rel_elem;

namespace {

const PeriodicField sin1 = PeriodicField::sine(1);
const PeriodicField cos1 = PeriodicField::cosine(1);
const PeriodicField one = PeriodicField::constant(1.0);
const CircleDiffeo id{};

}  // namespace

TEST_CASE("christoffel_lagrangian examples") {
  CHECK(max_mode_distance(christoffel_lagrangian(id, sin1, sin1), PeriodicField::sine(2, -1.0)) < 1e-15);
  const auto f = random_diffeo(1);
  CHECK(max_norm(christoffel_lagrangian(f, random_field(2), PeriodicField(0))) == 0.0);
  CHECK(max_norm(christoffel_lagrangian(id, one, one)) < 1e-15);

  const auto h = random_field(3);
  const auto k = random_field(4);
  CHECK(max_mode_distance(christoffel_lagrangian(f, h, k, 40), christoffel_lagrangian(f, k, h, 40)) < 1e-15);
  // pointwise against the formula
  const auto g = christoffel_lagrangian(f, h, k, 120);
  for (double x : {0.2, 1.7, 4.4}) {
    const double want = -deriv(multiply(h, k))(x) / f.derivative(x);
    CHECK(std::abs(g(x) - want) < 1e-10);
  }
}

TEST_CASE("curvature_lagrangian examples") {
  const auto f = random_diffeo(5);
  const auto h = random_field(6);
  const auto l = random_field(7);
  CHECK(max_norm(curvature_lagrangian(f, h, h, l)) < 1e-12);
  CHECK(max_mode_distance(curvature_lagrangian(id, sin1, cos1, sin1), -2.0 * cos1) < 1e-15);
  CHECK(max_norm(curvature_lagrangian(id, one, one, l)) == 0.0);
}

TEST_CASE("Lagrangian curvature at the identity equals the Lie-algebra curvature") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto x = random_field(s);
    const auto y = random_field(s + 100);
    const auto z = random_field(s + 200);
    CHECK(rel_elem(curvature_lagrangian(id, x, y, z), diff_curvature(x, y, z)) < 1e-10);
  }
}

TEST_CASE("Lagrangian curvature transfers by right translation") {
  // R_f(X o f, Y o f)(Z o f) = (R(X,Y)Z) o f
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_diffeo(s + 300, 3, 0.3);
    const auto x = random_field(s, 4);
    const auto y = random_field(s + 100, 4);
    const auto z = random_field(s + 200, 4);
    const int band = 120;
    const auto lhs = curvature_lagrangian(f, pull_back(x, f, band), pull_back(y, f, band), pull_back(z, f, band), band);
    const auto rhs = pull_back(diff_curvature(x, y, z), f, band);
    CHECK(max_norm(lhs - rhs, 512) < 1e-9 * std::max(1.0, max_norm(rhs, 512)));
  }
}

TEST_CASE("pull_back and push_forward are inverse") {
  const auto f = random_diffeo(9, 3, 0.3);
  const auto x = random_field(10, 5);
  CHECK(max_norm(push_forward(pull_back(x, f, 120), f, 120) - x, 512) < 1e-10);
}
