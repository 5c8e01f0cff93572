#ifndef VIRGEO_LAGRANGIAN_HPP
#define VIRGEO_LAGRANGIAN_HPP

// Christoffel form and curvature of the L2 metric on Diff(S^1) written in the
// Lagrangian frame: tangent vectors at f are fields h with f + s h a curve of
// diffeos. Both operations divide by powers of f_x, which is not band-limited,
// so they evaluate on a padded grid and re-analyse at a chosen output band.

#include "virgeo/field.hpp"
#include "virgeo/group.hpp"

namespace virgeo {

/// Gamma_f(h, k) = -(hk)_x / f_x. band_out < 0 selects band(h) + band(k) + band(f).
PeriodicField christoffel_lagrangian(const CircleDiffeo& f, const PeriodicField& h, const PeriodicField& k,
                                     int band_out = -1);

/// R_f(h, k) l = (f_xx h_x k l - f_xx h k_x l + f_x h k_xx l - f_x h_xx k l
///               + 2 f_x h k_x l_x - 2 f_x h_x k l_x) / f_x^3
/// band_out < 0 selects band(h) + band(k) + band(l) + band(f).
PeriodicField curvature_lagrangian(const CircleDiffeo& f, const PeriodicField& h, const PeriodicField& k,
                                   const PeriodicField& l, int band_out = -1);

/// X o f, sampled on a grid fitting band_out and re-analysed.
PeriodicField pull_back(const PeriodicField& x, const CircleDiffeo& f, int band_out);

/// h o f^-1, sampled on a grid fitting band_out and re-analysed.
PeriodicField push_forward(const PeriodicField& h, const CircleDiffeo& f, int band_out);

}  // namespace virgeo

#endif  // VIRGEO_LAGRANGIAN_HPP
