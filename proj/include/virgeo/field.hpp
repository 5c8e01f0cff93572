#ifndef VIRGEO_FIELD_HPP
#define VIRGEO_FIELD_HPP

// Band-limited real functions on the circle R/2piZ.
//
// A PeriodicField stores the Fourier coefficients c_k, k = 0..N, of
//
//     f(x) = sum_{k=-N}^{N} c_k e^{ikx},    c_{-k} = conj(c_k).
//
// The spectral form is canonical; grid samples are derived views. Derivatives,
// integrals and inner products are exact in mode arithmetic, and products can
// be taken either exactly (the band grows to N_f + N_g) or dealiased onto a
// fixed band through a zero-padded FFT.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace virgeo {

/// Thrown when an exact product would exceed the configured band cap.
class BandOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Equispaced collocation grid x_j = 2*pi*j/M.
struct GridSpec {
  int node_count = 0;

  /// Smallest grid that analyses a field of the given band without aliasing.
  static GridSpec for_band(int band) { return GridSpec{2 * band + 1}; }

  bool resolves(int band) const { return node_count >= 2 * band + 1; }

  template <typename Scalar = double>
  Scalar node(int j) const {
    return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(j) / Scalar(node_count);
  }
};

/// How a product of two fields is formed.
struct ProductMode {
  enum class Kind { exact, dealiased };

  Kind kind = Kind::exact;
  /// Result band for `dealiased`; hard cap on the result band for `exact`.
  int band = 4096;

  static ProductMode exact(int cap = 4096) { return {Kind::exact, cap}; }
  static ProductMode dealiased(int band) { return {Kind::dealiased, band}; }

  bool is_exact() const { return kind == Kind::exact; }
  friend bool operator==(const ProductMode&, const ProductMode&) = default;
};

template <typename Scalar_>
class BasicPeriodicField {
 public:
  using Scalar = Scalar_;
  using Complex = std::complex<Scalar>;
  using ModeVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicPeriodicField() : modes_(ModeVector::Zero(1)) {}

  explicit BasicPeriodicField(int band) : modes_(ModeVector::Zero(band + 1)) {
    if (band < 0) throw std::invalid_argument("negative band limit");
  }

  /// Takes modes k = 0..N; the imaginary part of c_0 is dropped so the field
  /// stays real-valued.
  explicit BasicPeriodicField(ModeVector modes) : modes_(std::move(modes)) {
    if (modes_.size() == 0) modes_ = ModeVector::Zero(1);
    modes_(0) = Complex(modes_(0).real(), Scalar(0));
  }

  static BasicPeriodicField constant(Scalar value) {
    BasicPeriodicField f(0);
    f.modes_(0) = Complex(value, 0);
    return f;
  }

  /// amplitude * cos(kx)
  static BasicPeriodicField cosine(int k, Scalar amplitude = Scalar(1)) {
    if (k == 0) return constant(amplitude);
    BasicPeriodicField f(k);
    f.modes_(k) = Complex(amplitude / 2, 0);
    return f;
  }

  /// amplitude * sin(kx)
  static BasicPeriodicField sine(int k, Scalar amplitude = Scalar(1)) {
    if (k == 0) return BasicPeriodicField(0);
    BasicPeriodicField f(k);
    f.modes_(k) = Complex(0, -amplitude / 2);
    return f;
  }

  int band() const { return static_cast<int>(modes_.size()) - 1; }
  const ModeVector& modes() const { return modes_; }

  /// c_k for any integer k; zero outside the band.
  Complex mode(int k) const {
    const int a = k < 0 ? -k : k;
    if (a > band()) return Complex(0);
    return k < 0 ? std::conj(modes_(a)) : modes_(a);
  }

  void set_mode(int k, Complex value) {
    if (k < 0 || k > band()) throw std::out_of_range("mode index outside band");
    modes_(k) = k == 0 ? Complex(value.real(), 0) : value;
  }

  /// Point evaluation by direct series summation.
  Scalar operator()(Scalar x) const {
    Scalar acc = modes_(0).real();
    for (int k = 1; k <= band(); ++k) {
      const Complex e(std::cos(Scalar(k) * x), std::sin(Scalar(k) * x));
      acc += Scalar(2) * (modes_(k) * e).real();
    }
    return acc;
  }

  /// Same field with band exactly `n` (zero-padded or truncated).
  BasicPeriodicField with_band(int n) const {
    ModeVector m = ModeVector::Zero(n + 1);
    const int keep = std::min(n, band());
    m.head(keep + 1) = modes_.head(keep + 1);
    return BasicPeriodicField(std::move(m));
  }

  /// Drops trailing modes whose magnitude is at most `tol`.
  BasicPeriodicField trimmed(Scalar tol = Scalar(0)) const {
    int n = band();
    while (n > 0 && std::abs(modes_(n)) <= tol) --n;
    return with_band(n);
  }

  BasicPeriodicField& operator+=(const BasicPeriodicField& o) {
    if (o.band() > band()) *this = with_band(o.band());
    modes_.head(o.modes_.size()) += o.modes_;
    return *this;
  }
  BasicPeriodicField& operator-=(const BasicPeriodicField& o) {
    if (o.band() > band()) *this = with_band(o.band());
    modes_.head(o.modes_.size()) -= o.modes_;
    return *this;
  }
  BasicPeriodicField& operator*=(Scalar s) {
    modes_ *= s;
    return *this;
  }

  friend BasicPeriodicField operator+(BasicPeriodicField a, const BasicPeriodicField& b) { return a += b; }
  friend BasicPeriodicField operator-(BasicPeriodicField a, const BasicPeriodicField& b) { return a -= b; }
  friend BasicPeriodicField operator*(Scalar s, BasicPeriodicField a) { return a *= s; }
  friend BasicPeriodicField operator*(BasicPeriodicField a, Scalar s) { return a *= s; }
  friend BasicPeriodicField operator-(BasicPeriodicField a) { return a *= Scalar(-1); }

  bool all_finite() const { return modes_.allFinite(); }

 private:
  ModeVector modes_;
};

using PeriodicField = BasicPeriodicField<double>;

namespace detail {

inline bool fft_friendly(int n) {
  for (int p : {2, 3, 5}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

/// Smallest even 2^a 3^b 5^c at least `n`.
inline int fft_size_at_least(int n) {
  int m = std::max(n, 2);
  while (!(m % 2 == 0 && fft_friendly(m))) ++m;
  return m;
}

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine = [] {
    Eigen::FFT<Scalar> e;
    e.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return e;
  }();
  return engine;
}

}  // namespace detail

/// f(x_j) on the grid, via inverse FFT. Requires a resolving grid.
template <typename Scalar>
typename BasicPeriodicField<Scalar>::RealVector sample(const BasicPeriodicField<Scalar>& f, const GridSpec& grid) {
  using Complex = std::complex<Scalar>;
  if (!grid.resolves(f.band())) throw std::invalid_argument("grid does not resolve field band");
  const int m = grid.node_count;
  std::vector<Complex> spectrum(m, Complex(0));
  spectrum[0] = f.mode(0);
  for (int k = 1; k <= f.band(); ++k) {
    spectrum[k] = f.mode(k);
    spectrum[m - k] = std::conj(f.mode(k));
  }
  std::vector<Complex> values;
  detail::fft_engine<Scalar>().inv(values, spectrum);
  typename BasicPeriodicField<Scalar>::RealVector out(m);
  for (int j = 0; j < m; ++j) out(j) = values[j].real();
  return out;
}

/// Inverse of `sample`: the band-`band` field whose modes are the grid's
/// discrete Fourier coefficients. Requires values.size() >= 2*band + 1.
template <typename Scalar, typename Derived>
BasicPeriodicField<Scalar> analyze(const Eigen::MatrixBase<Derived>& values, int band) {
  using Complex = std::complex<Scalar>;
  const int m = static_cast<int>(values.size());
  if (m < 2 * band + 1) throw std::invalid_argument("too few grid values for requested band");
  std::vector<Complex> in(m);
  for (int j = 0; j < m; ++j) in[j] = Complex(values(j), 0);
  std::vector<Complex> spectrum;
  detail::fft_engine<Scalar>().fwd(spectrum, in);
  typename BasicPeriodicField<Scalar>::ModeVector modes(band + 1);
  for (int k = 0; k <= band; ++k) modes(k) = spectrum[k] / Scalar(m);
  return BasicPeriodicField<Scalar>(std::move(modes));
}

inline PeriodicField analyze(const Eigen::VectorXd& values, int band) { return analyze<double>(values, band); }

/// Pointwise evaluation of a generic expression of several fields on a grid
/// fine enough that no product of total polynomial degree `degree` aliases
/// into the returned band. The result is the L2 projection onto `band_out`
/// whenever `op` is a polynomial of that degree in its arguments.
template <typename Scalar, typename Op, std::size_t Count>
BasicPeriodicField<Scalar> project_pointwise(const std::array<const BasicPeriodicField<Scalar>*, Count>& inputs,
                                             int degree, int band_out, Op&& op) {
  int band_in = 0;
  for (const auto* f : inputs) band_in = std::max(band_in, f->band());
  const GridSpec grid{detail::fft_size_at_least(degree * band_in + band_out + 1)};
  std::array<typename BasicPeriodicField<Scalar>::RealVector, Count> samples;
  for (std::size_t i = 0; i < Count; ++i) samples[i] = sample(*inputs[i], grid);
  typename BasicPeriodicField<Scalar>::RealVector out(grid.node_count);
  std::array<Scalar, Count> point;
  for (int j = 0; j < grid.node_count; ++j) {
    for (std::size_t i = 0; i < Count; ++i) point[i] = samples[i](j);
    out(j) = op(point);
  }
  return analyze<Scalar>(out, band_out);
}

/// d/dx: mode k is multiplied by ik.
template <typename Scalar>
BasicPeriodicField<Scalar> deriv(const BasicPeriodicField<Scalar>& f) {
  using Complex = std::complex<Scalar>;
  auto modes = f.modes();
  for (int k = 0; k <= f.band(); ++k) modes(k) *= Complex(0, Scalar(k));
  return BasicPeriodicField<Scalar>(std::move(modes));
}

/// n-th derivative, n >= 0.
template <typename Scalar>
BasicPeriodicField<Scalar> deriv(const BasicPeriodicField<Scalar>& f, int order) {
  using Complex = std::complex<Scalar>;
  auto modes = f.modes();
  for (int k = 0; k <= f.band(); ++k) modes(k) *= std::pow(Complex(0, Scalar(k)), order);
  if (order > 0) modes(0) = Complex(0);
  return BasicPeriodicField<Scalar>(std::move(modes));
}

template <typename Scalar>
BasicPeriodicField<Scalar> multiply_exact(const BasicPeriodicField<Scalar>& f, const BasicPeriodicField<Scalar>& g,
                                          int band_cap = 4096) {
  using Complex = std::complex<Scalar>;
  const int nf = f.band();
  const int ng = g.band();
  const int n = nf + ng;
  if (n > band_cap) {
    throw BandOverflow("exact product band " + std::to_string(n) + " exceeds cap " + std::to_string(band_cap));
  }
  typename BasicPeriodicField<Scalar>::ModeVector out(n + 1);
  for (int k = 0; k <= n; ++k) {
    Complex acc(0);
    for (int j = std::max(-nf, k - ng); j <= std::min(nf, k + ng); ++j) acc += f.mode(j) * g.mode(k - j);
    out(k) = acc;
  }
  return BasicPeriodicField<Scalar>(std::move(out));
}

/// Exact product truncated to `band`, computed on a zero-padded grid large
/// enough that aliased modes never land inside the kept band.
template <typename Scalar>
BasicPeriodicField<Scalar> multiply_dealiased(const BasicPeriodicField<Scalar>& f, const BasicPeriodicField<Scalar>& g,
                                              int band) {
  const int wide = 2 * std::max({f.band(), g.band(), band}) + 1;
  const GridSpec grid{detail::fft_size_at_least(std::max(f.band() + g.band() + band + 1, wide))};
  const auto fs = sample(f, grid);
  const auto gs = sample(g, grid);
  return analyze<Scalar>(fs.cwiseProduct(gs), band);
}

template <typename Scalar>
BasicPeriodicField<Scalar> multiply(const BasicPeriodicField<Scalar>& f, const BasicPeriodicField<Scalar>& g,
                                    const ProductMode& mode = ProductMode::exact()) {
  if (mode.is_exact()) return multiply_exact(f, g, mode.band);
  return multiply_dealiased(f, g, mode.band);
}

/// Integral over the circle: 2*pi*c_0.
template <typename Scalar>
Scalar integral(const BasicPeriodicField<Scalar>& f) {
  return Scalar(2) * std::numbers::pi_v<Scalar> * f.mode(0).real();
}

/// L2 inner product by Parseval; equals integral(multiply(f, g)).
template <typename Scalar>
Scalar inner(const BasicPeriodicField<Scalar>& f, const BasicPeriodicField<Scalar>& g) {
  const int n = std::min(f.band(), g.band());
  Scalar acc = f.mode(0).real() * g.mode(0).real();
  for (int k = 1; k <= n; ++k) acc += Scalar(2) * (f.mode(k) * std::conj(g.mode(k))).real();
  return Scalar(2) * std::numbers::pi_v<Scalar> * acc;
}

template <typename Scalar>
Scalar l2_norm(const BasicPeriodicField<Scalar>& f) {
  return std::sqrt(inner(f, f));
}

/// Largest |c_k| difference over all k (both fields padded to a common band).
template <typename Scalar>
Scalar max_mode_distance(const BasicPeriodicField<Scalar>& f, const BasicPeriodicField<Scalar>& g) {
  const int n = std::max(f.band(), g.band());
  Scalar d = 0;
  for (int k = 0; k <= n; ++k) d = std::max(d, std::abs(f.mode(k) - g.mode(k)));
  return d;
}

/// max_j |f(x_j)| on a grid of `nodes` points (default: 4 points per mode).
template <typename Scalar>
Scalar max_norm(const BasicPeriodicField<Scalar>& f, int nodes = 0) {
  const GridSpec grid{std::max(nodes, std::max(4 * f.band() + 4, 16))};
  return sample(f, grid).cwiseAbs().maxCoeff();
}

/// ||f - g|| / max(||g||, floor) in L2.
template <typename Scalar>
Scalar relative_l2(const BasicPeriodicField<Scalar>& f, const BasicPeriodicField<Scalar>& g,
                   Scalar floor = Scalar(1e-300)) {
  return l2_norm(BasicPeriodicField<Scalar>(f - g)) / std::max(l2_norm(g), floor);
}

/// Deterministic random field with |c_k| ~ |k|^-decay. Mode 0 is O(1).
template <typename Scalar = double>
BasicPeriodicField<Scalar> random_band_limited(int band, std::uint64_t seed, Scalar decay = Scalar(2)) {
  using Complex = std::complex<Scalar>;
  if (band < 0) throw std::invalid_argument("negative band limit");
  if (!(decay > 0)) throw std::invalid_argument("decay must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  typename BasicPeriodicField<Scalar>::ModeVector modes(band + 1);
  modes(0) = Complex(Scalar(normal(rng)) / 2, 0);
  for (int k = 1; k <= band; ++k) {
    const Scalar scale = std::pow(Scalar(k), -decay) / 2;
    const Scalar re = Scalar(normal(rng));
    const Scalar im = Scalar(normal(rng));
    modes(k) = Complex(re, im) * scale;
  }
  return BasicPeriodicField<Scalar>(std::move(modes));
}

}  // namespace virgeo

#endif  // VIRGEO_FIELD_HPP
