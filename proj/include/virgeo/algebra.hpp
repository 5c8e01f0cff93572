#ifndef VIRGEO_ALGEBRA_HPP
#define VIRGEO_ALGEBRA_HPP

// The two Lie algebras carrying the right-invariant L2 metrics.
//
//   X(S^1):  [X,Y] = X'Y - XY'         (the NEGATIVE of the usual vector
//                                        field bracket; every sign below,
//                                        including curvature and the sign of
//                                        the KdV nonlinearity, depends on it)
//            <X,Y> = int X Y dx
//
//   R x_w X(S^1):  [(h,a),(k,b)] = (h'k - hk', w(h,k)),  w(h,k) = int h' k'' dx
//                  <(h,a),(k,b)> = int h k dx + a b
//
// Both algebras model the MetricAlgebra concept so that the covariant
// derivative, curvature and Jacobi operators are written once.

#include <concepts>
#include <utility>

#include "virgeo/field.hpp"

namespace virgeo {

/// Element (h, a) of the centrally extended algebra.
template <typename Scalar_>
struct BasicVirasoroElement {
  using Scalar = Scalar_;
  using Field = BasicPeriodicField<Scalar>;

  Field h;
  Scalar a = 0;

  BasicVirasoroElement() = default;
  BasicVirasoroElement(Field field, Scalar central) : h(std::move(field)), a(central) {}

  static BasicVirasoroElement central(Scalar a) { return {Field(0), a}; }

  BasicVirasoroElement& operator+=(const BasicVirasoroElement& o) {
    h += o.h;
    a += o.a;
    return *this;
  }
  BasicVirasoroElement& operator-=(const BasicVirasoroElement& o) {
    h -= o.h;
    a -= o.a;
    return *this;
  }
  BasicVirasoroElement& operator*=(Scalar s) {
    h *= s;
    a *= s;
    return *this;
  }
  friend BasicVirasoroElement operator+(BasicVirasoroElement x, const BasicVirasoroElement& y) { return x += y; }
  friend BasicVirasoroElement operator-(BasicVirasoroElement x, const BasicVirasoroElement& y) { return x -= y; }
  friend BasicVirasoroElement operator*(Scalar s, BasicVirasoroElement x) { return x *= s; }
  friend BasicVirasoroElement operator*(BasicVirasoroElement x, Scalar s) { return x *= s; }
  friend BasicVirasoroElement operator-(BasicVirasoroElement x) { return x *= Scalar(-1); }
};

using VirasoroElement = BasicVirasoroElement<double>;

/// Gelfand-Fuchs cocycle w(h,k) = int h' k'' dx. Bilinear, antisymmetric.
template <typename Scalar>
Scalar gelfand_fuchs(const BasicPeriodicField<Scalar>& h, const BasicPeriodicField<Scalar>& k) {
  return inner(deriv(h), deriv(k, 2));
}

/// Determinant form (1/2) int det[[h', k'], [h'', k'']] dx of the same
/// cocycle; kept as an independent route for property tests.
template <typename Scalar>
Scalar gelfand_fuchs_determinant(const BasicPeriodicField<Scalar>& h, const BasicPeriodicField<Scalar>& k) {
  const auto h1 = deriv(h);
  const auto k1 = deriv(k);
  return (inner(h1, deriv(k1)) - inner(deriv(h1), k1)) / Scalar(2);
}

/// Operations shared by X(S^1) and its central extension.
///
///   bracket(x, y)        [x, y]
///   ad_transpose(x, z)   ad(x)^T z, the <,>-adjoint of ad(x) = [x, .]
///   alpha(x, z)          alpha(x) z := ad(z)^T x
///   inner(x, y)          <x, y>
///
/// Elements form a real vector space through +, - and scalar *.
template <typename A>
concept MetricAlgebra = requires(const A& alg, const typename A::Element& x, typename A::Scalar s) {
  typename A::Scalar;
  typename A::Element;
  { alg.bracket(x, x) } -> std::same_as<typename A::Element>;
  { alg.ad_transpose(x, x) } -> std::same_as<typename A::Element>;
  { alg.alpha(x, x) } -> std::same_as<typename A::Element>;
  { alg.inner(x, x) } -> std::convertible_to<typename A::Scalar>;
  { x + x } -> std::convertible_to<typename A::Element>;
  { x - x } -> std::convertible_to<typename A::Element>;
  { s * x } -> std::convertible_to<typename A::Element>;
};

/// Generic alpha(x) z = ad(z)^T x, for cross-checking the closed forms.
template <MetricAlgebra A>
typename A::Element alpha_from_adjoint(const A& alg, const typename A::Element& x, const typename A::Element& z) {
  return alg.ad_transpose(z, x);
}

/// X(S^1) with the L2 metric. `mode` selects exact (band-growing) or
/// dealiased products; identity checks use the former, time steppers the
/// latter.
template <typename Scalar_>
struct BasicDiffAlgebra {
  using Scalar = Scalar_;
  using Element = BasicPeriodicField<Scalar>;

  ProductMode mode = ProductMode::exact();

  Element product(const Element& f, const Element& g) const { return multiply(f, g, mode); }

  /// [X,Y] = X'Y - XY'
  Element bracket(const Element& x, const Element& y) const {
    return product(deriv(x), y) - product(x, deriv(y));
  }

  Element ad(const Element& x, const Element& y) const { return bracket(x, y); }

  /// ad(X)^T Z = 2X'Z + XZ'
  Element ad_transpose(const Element& x, const Element& z) const {
    return Scalar(2) * product(deriv(x), z) + product(x, deriv(z));
  }

  /// alpha(X) Z = 2Z'X + ZX'
  Element alpha(const Element& x, const Element& z) const {
    return Scalar(2) * product(deriv(z), x) + product(z, deriv(x));
  }

  Scalar inner(const Element& x, const Element& y) const { return virgeo::inner(x, y); }
};

using DiffAlgebra = BasicDiffAlgebra<double>;

/// R x_w X(S^1) with <(h,a),(k,b)> = int hk + ab.
template <typename Scalar_>
struct BasicVirasoroAlgebra {
  using Scalar = Scalar_;
  using Element = BasicVirasoroElement<Scalar>;
  using Field = BasicPeriodicField<Scalar>;

  ProductMode mode = ProductMode::exact();

  Field product(const Field& f, const Field& g) const { return multiply(f, g, mode); }

  /// [(h,a),(k,b)] = (h'k - hk', w(h,k)); central parts drop out.
  Element bracket(const Element& x, const Element& y) const {
    return {product(deriv(x.h), y.h) - product(x.h, deriv(y.h)), gelfand_fuchs(x.h, y.h)};
  }

  Element ad(const Element& x, const Element& y) const { return bracket(x, y); }

  /// ad(h,a)^T (l,c) = (2h'l + hl' + c h''', 0)
  Element ad_transpose(const Element& x, const Element& z) const {
    Field first = Scalar(2) * product(deriv(x.h), z.h) + product(x.h, deriv(z.h));
    first += z.a * deriv(x.h, 3);
    return {std::move(first), Scalar(0)};
  }

  /// alpha(h,a)(k,b) = (h'k + 2hk' + a k''', 0)
  Element alpha(const Element& x, const Element& z) const {
    Field first = product(deriv(x.h), z.h) + Scalar(2) * product(x.h, deriv(z.h));
    first += x.a * deriv(z.h, 3);
    return {std::move(first), Scalar(0)};
  }

  Scalar inner(const Element& x, const Element& y) const { return virgeo::inner(x.h, y.h) + x.a * y.a; }
};

using VirasoroAlgebra = BasicVirasoroAlgebra<double>;

static_assert(MetricAlgebra<DiffAlgebra>);
static_assert(MetricAlgebra<VirasoroAlgebra>);

// Free-function spellings for the common exact-arithmetic case.

template <typename Scalar>
BasicPeriodicField<Scalar> bracket(const BasicPeriodicField<Scalar>& x, const BasicPeriodicField<Scalar>& y) {
  return BasicDiffAlgebra<Scalar>{}.bracket(x, y);
}

template <typename Scalar>
BasicPeriodicField<Scalar> ad_transpose(const BasicPeriodicField<Scalar>& x, const BasicPeriodicField<Scalar>& z) {
  return BasicDiffAlgebra<Scalar>{}.ad_transpose(x, z);
}

template <typename Scalar>
BasicPeriodicField<Scalar> alpha(const BasicPeriodicField<Scalar>& x, const BasicPeriodicField<Scalar>& z) {
  return BasicDiffAlgebra<Scalar>{}.alpha(x, z);
}

template <typename Scalar>
BasicVirasoroElement<Scalar> vir_bracket(const BasicVirasoroElement<Scalar>& x, const BasicVirasoroElement<Scalar>& y) {
  return BasicVirasoroAlgebra<Scalar>{}.bracket(x, y);
}

template <typename Scalar>
BasicVirasoroElement<Scalar> vir_ad_transpose(const BasicVirasoroElement<Scalar>& x,
                                              const BasicVirasoroElement<Scalar>& z) {
  return BasicVirasoroAlgebra<Scalar>{}.ad_transpose(x, z);
}

template <typename Scalar>
BasicVirasoroElement<Scalar> vir_alpha(const BasicVirasoroElement<Scalar>& x, const BasicVirasoroElement<Scalar>& z) {
  return BasicVirasoroAlgebra<Scalar>{}.alpha(x, z);
}

template <typename Scalar>
Scalar vir_inner(const BasicVirasoroElement<Scalar>& x, const BasicVirasoroElement<Scalar>& y) {
  return BasicVirasoroAlgebra<Scalar>{}.inner(x, y);
}

/// Distance helpers used throughout the tests and suites.
template <typename Scalar>
Scalar element_distance(const BasicPeriodicField<Scalar>& x, const BasicPeriodicField<Scalar>& y) {
  return l2_norm(BasicPeriodicField<Scalar>(x - y));
}

template <typename Scalar>
Scalar element_distance(const BasicVirasoroElement<Scalar>& x, const BasicVirasoroElement<Scalar>& y) {
  const Scalar dh = l2_norm(BasicPeriodicField<Scalar>(x.h - y.h));
  return std::sqrt(dh * dh + (x.a - y.a) * (x.a - y.a));
}

template <typename Scalar>
Scalar element_norm(const BasicPeriodicField<Scalar>& x) {
  return l2_norm(x);
}

template <typename Scalar>
Scalar element_norm(const BasicVirasoroElement<Scalar>& x) {
  return std::sqrt(inner(x.h, x.h) + x.a * x.a);
}

}  // namespace virgeo

#endif  // VIRGEO_ALGEBRA_HPP
