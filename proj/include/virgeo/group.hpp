#ifndef VIRGEO_GROUP_HPP
#define VIRGEO_GROUP_HPP

// Diff+(S^1) and the Virasoro-Bott group.
//
// A CircleDiffeo is phi(x) = x + p(x) with p periodic, so phi(x + 2pi) =
// phi(x) + 2pi holds structurally. Orientation is checked on the collocation
// grid: phi' = 1 + p' > 0 at every node. Off-grid values of p are obtained by
// direct series summation; results of composition and inversion are sampled
// on the grid and re-analysed at band (M - 1) / 2.

#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "virgeo/field.hpp"

namespace virgeo {

class NotMonotone : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InversionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultDiffeoGrid = 128;

/// Value and first derivative of f at x, summed with a complex recurrence.
std::pair<double, double> evaluate_with_derivative(const PeriodicField& f, double x);

class CircleDiffeo {
 public:
  /// The identity on the default grid.
  CircleDiffeo();

  /// Throws NotMonotone if 1 + p' <= 0 at any grid node.
  explicit CircleDiffeo(PeriodicField displacement, GridSpec grid = GridSpec{kDefaultDiffeoGrid});

  static CircleDiffeo identity(GridSpec grid = GridSpec{kDefaultDiffeoGrid});
  static CircleDiffeo rotation(double shift, GridSpec grid = GridSpec{kDefaultDiffeoGrid});

  /// Builds phi from the node values phi(x_j) - x_j.
  static CircleDiffeo from_node_displacements(const Eigen::VectorXd& values);

  const PeriodicField& displacement() const { return p_; }
  const GridSpec& grid() const { return grid_; }

  double operator()(double x) const { return x + p_(x); }
  double derivative(double x) const;

  /// phi' as a field (1 + p').
  PeriodicField derivative_field() const;

  /// min_j phi'(x_j)
  double min_derivative() const;

  /// phi(x_j) - x_j at the grid nodes.
  Eigen::VectorXd node_displacements() const;

 private:
  PeriodicField p_;
  GridSpec grid_;
};

/// (phi o psi)(x) = psi(x) + p_phi(psi(x)).
CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi);

/// Nodewise Newton with bisection fallback, tolerance 1e-12, 50 iterations.
CircleDiffeo invert(const CircleDiffeo& phi);

/// Solves phi(y) = x for a single point.
double invert_point(const CircleDiffeo& phi, double x);

/// T_g(Inv) h = -(h o g^-1) / (g' o g^-1).
PeriodicField inversion_derivative(const CircleDiffeo& g, const PeriodicField& h);

/// Bott cocycle c(phi, psi) = int log(phi' o psi) psi''/psi' dx, trapezoid
/// rule on twice the finer of the two grids.
double bott_cocycle(const CircleDiffeo& phi, const CircleDiffeo& psi);

/// max_j |phi(x_j) - psi(x_j)| over the finer grid.
double max_distance(const CircleDiffeo& phi, const CircleDiffeo& psi);

/// Element (phi, theta) of the Virasoro-Bott group; the S^1 factor is stored
/// as theta in [0, 1) with alpha = exp(2 pi i theta).
struct VirasoroBottElement {
  CircleDiffeo phi;
  double theta = 0.0;

  VirasoroBottElement() = default;
  VirasoroBottElement(CircleDiffeo diffeo, double angle);
};

/// Reduces an angle to [0, 1).
double wrap_angle(double theta);

/// Distance on R/Z.
double angle_distance(double a, double b);

/// (phi, a)(psi, b) = (phi o psi, a + b + c(phi, psi) mod 1)
VirasoroBottElement vb_multiply(const VirasoroBottElement& g1, const VirasoroBottElement& g2);

/// (phi, a)^-1 = (phi^-1, -a)
VirasoroBottElement vb_invert(const VirasoroBottElement& g);

/// A curve t -> g(t) sampled at t_n = n * dt.
struct DiffeoPath {
  double dt = 0.0;
  std::vector<CircleDiffeo> samples;
};

/// Velocity fields u_n sampled on the same time grid.
struct VelocityPath {
  double dt = 0.0;
  std::vector<PeriodicField> samples;
};

/// u = g_t o g^-1 with g_t from second-order differences in t (one-sided at
/// the ends). Requires at least two samples.
VelocityPath right_log_derivative(const DiffeoPath& path);

/// Solves g_t = u o g, g(0) = id, by RK4 on the node trajectories. Midpoint
/// velocities come from cubic interpolation in time. Throws NotMonotone when
/// a sample loses orientation.
DiffeoPath reconstruct(const VelocityPath& path, GridSpec grid = GridSpec{kDefaultDiffeoGrid});

}  // namespace virgeo

#endif  // VIRGEO_GROUP_HPP
