#ifndef VIRGEO_TESTS_SUPPORT_HPP
#define VIRGEO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "virgeo/algebra.hpp"
#include "virgeo/group.hpp"

namespace virgeo::testing {

inline constexpr double pi = std::numbers::pi;

/// Default property-test field: band 8, |c_k| ~ k^-2.
inline PeriodicField random_field(std::uint64_t seed, int band = 8, double decay = 2.0) {
  return random_band_limited(band, seed, decay);
}

inline VirasoroElement random_element(std::uint64_t seed, int band = 8) {
  const auto h = random_field(seed, band);
  // Central part drawn from the same stream as a spare mode.
  const double a = random_field(seed ^ 0x9e3779b97f4a7c15ULL, 0).mode(0).real() * 2.0;
  return {h, a};
}

/// Small random diffeo: displacement rescaled so max |p'| <= slope.
inline CircleDiffeo random_diffeo(std::uint64_t seed, int band = 6, double slope = 0.5, int grid = 512) {
  auto p = random_field(seed, band);
  const double m = sample(deriv(p), GridSpec{kDefaultDiffeoGrid}).cwiseAbs().maxCoeff();
  if (m > 0) p *= slope / m;
  return CircleDiffeo(p, GridSpec{grid});
}

inline double rel(double got, double want, double floor = 1.0) {
  return std::abs(got - want) / std::max(floor, std::abs(want));
}

template <typename E>
double rel_elem(const E& got, const E& want, double floor = 1.0) {
  return element_distance(got, want) / std::max(floor, element_norm(want));
}

/// Trapezoid rule on M nodes evaluating f by direct series summation; an
/// independent route to integrals of band-limited functions.
template <typename F>
double trapezoid(F&& f, int nodes) {
  double acc = 0;
  for (int j = 0; j < nodes; ++j) acc += f(2.0 * pi * j / nodes);
  return acc * 2.0 * pi / nodes;
}

}  // namespace virgeo::testing

#endif
