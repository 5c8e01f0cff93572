#include "virgeo/lagrangian.hpp"

#include <algorithm>

namespace virgeo {

namespace {

// Grid with 3/2 padding over the output band, never coarser than f's grid.
GridSpec work_grid(const CircleDiffeo& f, int band_out) {
  return GridSpec{detail::fft_size_at_least(std::max(3 * band_out + 1, f.grid().node_count))};
}

struct Slopes {
  Eigen::VectorXd fx;
  Eigen::VectorXd fxx;
};

Slopes slopes(const CircleDiffeo& f, const GridSpec& grid) {
  const PeriodicField& p = f.displacement();
  Slopes s{sample(deriv(p), grid).array() + 1.0, sample(deriv(p, 2), grid)};
  if (!(s.fx.minCoeff() > 0.0)) throw NotMonotone("Lagrangian operator: f_x <= 0 on the evaluation grid");
  return s;
}

}  // namespace

PeriodicField christoffel_lagrangian(const CircleDiffeo& f, const PeriodicField& h, const PeriodicField& k,
                                     int band_out) {
  if (band_out < 0) band_out = h.band() + k.band() + f.displacement().band();
  const GridSpec grid = work_grid(f, band_out);
  const Slopes s = slopes(f, grid);
  const Eigen::VectorXd hk_x = sample(deriv(multiply(h, k)), grid);
  return analyze(Eigen::VectorXd(-hk_x.cwiseQuotient(s.fx)), band_out);
}

PeriodicField curvature_lagrangian(const CircleDiffeo& f, const PeriodicField& h, const PeriodicField& k,
                                   const PeriodicField& l, int band_out) {
  if (band_out < 0) band_out = h.band() + k.band() + l.band() + f.displacement().band();
  const GridSpec grid = work_grid(f, band_out);
  const Slopes s = slopes(f, grid);
  const Eigen::ArrayXd h0 = sample(h, grid), h1 = sample(deriv(h), grid), h2 = sample(deriv(h, 2), grid);
  const Eigen::ArrayXd k0 = sample(k, grid), k1 = sample(deriv(k), grid), k2 = sample(deriv(k, 2), grid);
  const Eigen::ArrayXd l0 = sample(l, grid), l1 = sample(deriv(l), grid);
  const Eigen::ArrayXd fx = s.fx.array(), fxx = s.fxx.array();
  const Eigen::ArrayXd num = fxx * (h1 * k0 - h0 * k1) * l0 + fx * (h0 * k2 - h2 * k0) * l0 +
                             2.0 * fx * (h0 * k1 - h1 * k0) * l1;
  return analyze(Eigen::VectorXd(num / fx.cube()), band_out);
}

PeriodicField pull_back(const PeriodicField& x, const CircleDiffeo& f, int band_out) {
  const GridSpec grid{detail::fft_size_at_least(2 * band_out + 1)};
  Eigen::VectorXd v(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) v(j) = evaluate_with_derivative(x, f(grid.node(j))).first;
  return analyze(v, band_out);
}

PeriodicField push_forward(const PeriodicField& h, const CircleDiffeo& f, int band_out) {
  const GridSpec grid{detail::fft_size_at_least(2 * band_out + 1)};
  Eigen::VectorXd v(grid.node_count);
  for (int j = 0; j < grid.node_count; ++j) v(j) = evaluate_with_derivative(h, invert_point(f, grid.node(j))).first;
  return analyze(v, band_out);
}

}  // namespace virgeo
