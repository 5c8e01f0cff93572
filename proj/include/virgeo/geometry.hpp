#ifndef VIRGEO_GEOMETRY_HPP
#define VIRGEO_GEOMETRY_HPP

// Levi-Civita geometry of a right-invariant metric, written once against the
// MetricAlgebra concept.
//
// Normalization: every operation here returns R, never 4R. The single
// exception is sectional_vb, which reports <4R(x1,x2)x1, x2> unnormalized so
// that it is directly comparable with the classical closed form
// -pi (8 + a1^2 + a2^2 - 3 pi) for ((sin,a1),(cos,a2)).
//
// Note the slot order: sectional_vb puts the same element in slots 1 and 3.
// The textbook sectional curvature <R(x,y)y,x> equals -<R(x,y)x,y> by
// antisymmetry in the last pair.

#include <cmath>
#include <limits>

#include "virgeo/algebra.hpp"

namespace virgeo {

/// Covariant derivative along a curve in right trivialization:
///   D_t y = y_t + 1/2 ad(u)^T y + 1/2 alpha(u) y - 1/2 ad(u) y.
template <MetricAlgebra A>
typename A::Element covariant_deriv_along_curve(const A& alg, const typename A::Element& u,
                                                const typename A::Element& y, const typename A::Element& y_t) {
  using S = typename A::Scalar;
  const S half(0.5);
  return y_t + half * alg.ad_transpose(u, y) + half * alg.alpha(u, y) - half * alg.bracket(u, y);
}

/// R(X,Y)Z by nested application of
///   -1/4 [ad^T(X)+ad(X), ad^T(Y)+ad(Y)] + 1/4 [ad^T(X)-ad(X), alpha(Y)]
///   +1/4 [alpha(X), ad^T(Y)-ad(Y)] + 1/4 [alpha(X), alpha(Y)] + 1/2 alpha([X,Y]),
/// with [P,Q]Z = P(QZ) - Q(PZ).
template <MetricAlgebra A>
typename A::Element curvature_operator(const A& alg, const typename A::Element& x, const typename A::Element& y,
                                       const typename A::Element& z) {
  using E = typename A::Element;
  using S = typename A::Scalar;
  auto sym = [&](const E& p, const E& v) { return alg.ad_transpose(p, v) + alg.bracket(p, v); };
  auto skew = [&](const E& p, const E& v) { return alg.ad_transpose(p, v) - alg.bracket(p, v); };
  auto al = [&](const E& p, const E& v) { return alg.alpha(p, v); };
  auto commutator = [&](auto&& p, const E& px, auto&& q, const E& qx) {
    return p(px, q(qx, z)) - q(qx, p(px, z));
  };
  const S quarter(0.25);
  E out = S(-0.25) * commutator(sym, x, sym, y);
  out += quarter * commutator(skew, x, al, y);
  out += quarter * commutator(al, x, skew, y);
  out += quarter * commutator(al, x, al, y);
  out += S(0.5) * alg.alpha(alg.bracket(x, y), z);
  return out;
}

/// <R(X,Y)Z, U> from the fourteen-term expansion (the expansion computes
/// <4R(X,Y)Z,U>; this returns a quarter of it).
template <MetricAlgebra A>
typename A::Scalar curvature_quadruple(const A& alg, const typename A::Element& x, const typename A::Element& y,
                                       const typename A::Element& z, const typename A::Element& u) {
  using S = typename A::Scalar;
  auto br = [&](const auto& p, const auto& q) { return alg.bracket(p, q); };
  auto at = [&](const auto& p, const auto& q) { return alg.ad_transpose(p, q); };
  auto ip = [&](const auto& p, const auto& q) { return alg.inner(p, q); };

  const auto xy = br(x, y);
  S four_r = S(2) * ip(xy, br(z, u));
  four_r -= ip(br(y, z), br(x, u));
  four_r += ip(br(x, z), br(y, u));
  four_r -= ip(z, br(u, xy));
  four_r += ip(u, br(z, xy));
  four_r -= ip(y, br(x, br(u, z)));
  four_r -= ip(x, br(y, br(z, u)));

  const auto atxz = at(x, z);
  const auto atyu = at(y, u);
  const auto atzx = at(z, x);
  const auto atux = at(u, x);
  const auto atyz = at(y, z);
  const auto atxu = at(x, u);
  const auto atzy = at(z, y);
  four_r += ip(atxz, atyu);
  four_r += ip(atxz, at(u, y));
  four_r += ip(atzx, atyu);
  four_r -= ip(atux, atyz);
  four_r -= ip(atyz, atxu);
  four_r -= ip(atzy, atxu);
  four_r -= ip(atux, atzy);
  four_r += ip(at(u, y), atzx);
  return four_r / S(4);
}

/// Closed form on X(S^1): R(X,Y)Z = -2[X,Y]Z' - [X,Y]'Z = -alpha([X,Y])Z.
template <typename Scalar>
BasicPeriodicField<Scalar> diff_curvature(const BasicPeriodicField<Scalar>& x, const BasicPeriodicField<Scalar>& y,
                                          const BasicPeriodicField<Scalar>& z,
                                          const ProductMode& mode = ProductMode::exact()) {
  const BasicDiffAlgebra<Scalar> alg{mode};
  const auto xy = alg.bracket(x, y);
  return -(Scalar(2) * alg.product(xy, deriv(z)) + alg.product(deriv(xy), z));
}

/// Closed-form R(x1,x2)x3 on the Virasoro algebra: the column 4R(x1,x2)x3
/// written out entry by entry, divided by 4.
template <typename Scalar>
BasicVirasoroElement<Scalar> vir_curvature(const BasicVirasoroElement<Scalar>& x1,
                                           const BasicVirasoroElement<Scalar>& x2,
                                           const BasicVirasoroElement<Scalar>& x3,
                                           const ProductMode& mode = ProductMode::exact()) {
  using Field = BasicPeriodicField<Scalar>;
  auto mul = [&](const Field& f, const Field& g) { return multiply(f, g, mode); };
  const Field& h1 = x1.h;
  const Field& h2 = x2.h;
  const Field& h3 = x3.h;
  const Scalar a1 = x1.a;
  const Scalar a2 = x2.a;
  const Scalar a3 = x3.a;
  auto d1 = [](const Field& f, int n) { return deriv(f, n); };

  // Coefficient fields of the differential operator acting on h3.
  const Field c0 = Scalar(4) * (mul(h1, d1(h2, 2)) - mul(d1(h1, 2), h2)) + Scalar(2) * (a1 * d1(h2, 4) - a2 * d1(h1, 4));
  const Field c1 = Scalar(8) * (mul(h1, d1(h2, 1)) - mul(d1(h1, 1), h2)) + Scalar(10) * (a1 * d1(h2, 3) - a2 * d1(h1, 3));
  const Field c2 = Scalar(18) * (a1 * d1(h2, 2) - a2 * d1(h1, 2));
  const Field c3 = Scalar(12) * (a1 * d1(h2, 1) - a2 * d1(h1, 1));

  Field first = mul(c0, h3) + mul(c1, d1(h3, 1)) + mul(c2, d1(h3, 2)) + mul(c3, d1(h3, 3));
  first += Scalar(2) * gelfand_fuchs(h1, h2) * d1(h3, 3);
  first -= gelfand_fuchs(h2, h3) * d1(h1, 3);
  first += gelfand_fuchs(h1, h3) * d1(h2, 3);
  first += Scalar(2) * a3 * (mul(d1(h1, 3), d1(h2, 1)) - mul(d1(h1, 1), d1(h2, 3)));
  first += Scalar(2) * a3 * (mul(h1, d1(h2, 4)) - mul(d1(h1, 4), h2));
  first += a3 * (a1 * d1(h2, 6) - a2 * d1(h1, 6));

  Scalar second = inner(d1(h3, 3), Field(a1 * d1(h2, 3) - a2 * d1(h1, 3)));
  const Field w = mul(h1, d1(h2, 3)) - mul(d1(h1, 3), h2) - Scalar(2) * mul(d1(h1, 1), d1(h2, 2)) +
                  Scalar(2) * mul(d1(h1, 2), d1(h2, 1));
  second += Scalar(2) * inner(d1(h3, 1), w);

  return {Scalar(0.25) * first, Scalar(0.25) * second};
}

/// <4R(x1,x2)x1, x2>, unnormalized, from the closed integral formula
///   int( -4[h1,h2]^2 + 4(a1h2 - a2h1)(h1h2'''' - h1'h2''' + h1'''h2' - h1''''h2)
///        - a1^2 (h2''')^2 + 2 a1 a2 h1''' h2''' - a2^2 (h1''')^2 ) dx
///   + 3 w(h1,h2)^2.
template <typename Scalar>
Scalar sectional_vb(const BasicVirasoroElement<Scalar>& x1, const BasicVirasoroElement<Scalar>& x2) {
  using Field = BasicPeriodicField<Scalar>;
  const Field& h1 = x1.h;
  const Field& h2 = x2.h;
  const Scalar a1 = x1.a;
  const Scalar a2 = x2.a;
  const Field br = bracket(h1, h2);
  const Field lin = a1 * h2 - a2 * h1;
  const Field quad = multiply(h1, deriv(h2, 4)) - multiply(deriv(h1, 1), deriv(h2, 3)) +
                     multiply(deriv(h1, 3), deriv(h2, 1)) - multiply(deriv(h1, 4), h2);
  const Field cub = a1 * deriv(h2, 3) - a2 * deriv(h1, 3);
  const Scalar w = gelfand_fuchs(h1, h2);
  return Scalar(-4) * inner(br, br) + Scalar(4) * inner(lin, quad) - inner(cub, cub) + Scalar(3) * w * w;
}

/// Sectional curvature of span{x1, x2} normalized by the Gram determinant
/// |x1|^2 |x2|^2 - <x1,x2>^2, in the textbook convention <R(x,y)y,x>/area.
/// Returns NaN for a degenerate plane.
template <MetricAlgebra A>
typename A::Scalar normalized_sectional(const A& alg, const typename A::Element& x1, const typename A::Element& x2) {
  using S = typename A::Scalar;
  const S area = alg.inner(x1, x1) * alg.inner(x2, x2) - alg.inner(x1, x2) * alg.inner(x1, x2);
  if (!(area > S(0))) return std::numeric_limits<S>::quiet_NaN();
  return curvature_quadruple(alg, x1, x2, x2, x1) / area;
}

/// Cross-check bundle produced by evaluate_curvature.
template <typename Element, typename Scalar>
struct CurvatureReport {
  Element operator_value;
  Scalar quadruple_value = 0;
  /// |<R(X,Y)Z,U> - quadruple| / scale
  Scalar operator_vs_quadruple = 0;
  /// |R(X,Y)Z - closed form| / scale
  Scalar operator_vs_closed_form = 0;
};

template <typename Scalar>
CurvatureReport<BasicPeriodicField<Scalar>, Scalar> evaluate_curvature(const BasicPeriodicField<Scalar>& x,
                                                                       const BasicPeriodicField<Scalar>& y,
                                                                       const BasicPeriodicField<Scalar>& z,
                                                                       const BasicPeriodicField<Scalar>& u) {
  const BasicDiffAlgebra<Scalar> alg{};
  CurvatureReport<BasicPeriodicField<Scalar>, Scalar> r;
  r.operator_value = curvature_operator(alg, x, y, z);
  r.quadruple_value = curvature_quadruple(alg, x, y, z, u);
  const Scalar via_op = alg.inner(r.operator_value, u);
  r.operator_vs_quadruple = std::abs(via_op - r.quadruple_value) / std::max(Scalar(1), std::abs(via_op));
  const auto closed = diff_curvature(x, y, z);
  r.operator_vs_closed_form = element_distance(r.operator_value, closed) / std::max(Scalar(1), element_norm(closed));
  return r;
}

template <typename Scalar>
CurvatureReport<BasicVirasoroElement<Scalar>, Scalar> evaluate_curvature(const BasicVirasoroElement<Scalar>& x,
                                                                         const BasicVirasoroElement<Scalar>& y,
                                                                         const BasicVirasoroElement<Scalar>& z,
                                                                         const BasicVirasoroElement<Scalar>& u) {
  const BasicVirasoroAlgebra<Scalar> alg{};
  CurvatureReport<BasicVirasoroElement<Scalar>, Scalar> r;
  r.operator_value = curvature_operator(alg, x, y, z);
  r.quadruple_value = curvature_quadruple(alg, x, y, z, u);
  const Scalar via_op = alg.inner(r.operator_value, u);
  r.operator_vs_quadruple = std::abs(via_op - r.quadruple_value) / std::max(Scalar(1), std::abs(via_op));
  const auto closed = vir_curvature(x, y, z);
  r.operator_vs_closed_form = element_distance(r.operator_value, closed) / std::max(Scalar(1), element_norm(closed));
  return r;
}

}  // namespace virgeo

#endif  // VIRGEO_GEOMETRY_HPP
