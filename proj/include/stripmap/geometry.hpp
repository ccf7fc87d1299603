#pragma once

#include <span>
#include <vector>

#include "stripmap/common.hpp"

namespace stripmap {

/// A rectilinear slit [a, b] inside the strip |Im z| < pi/2.
///
/// Center, length and angle are derived from the endpoints on construction;
/// the angle is normalized to (-pi/2, pi/2] because [a, b] and [b, a] are the
/// same set.
class SlitSpec {
public:
  SlitSpec(Complex a, Complex b);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex center() const { return center_; }
  double length() const { return length_; }
  double theta() const { return theta_; }

private:
  Complex a_, b_, center_;
  double length_;
  double theta_;
};

/// The strip with m pairwise disjoint slits removed.
class StripSlitDomain {
public:
  explicit StripSlitDomain(std::vector<SlitSpec> slits);

  const std::vector<SlitSpec>& slits() const { return slits_; }
  int size() const { return static_cast<int>(slits_.size()); }

  /// Shortest distance from z to any slit.
  double distance_to_slits(Complex z) const;

private:
  std::vector<SlitSpec> slits_;
};

inline constexpr double kSlitSeparationTol = 1e-12;

double segment_distance(Complex p0, Complex p1, Complex q0, Complex q1);
double point_segment_distance(Complex z, Complex p0, Complex p1);

/// Ellipse z + 0.5 a e^{i theta} (cos t - i r sin t) in the strip.
struct EllipseParams {
  Complex z;
  double a;
  double theta;
  double r;

  /// Largest |Im| over the ellipse, computed in closed form.
  double max_abs_imag() const;
  Complex point(double t) const;
};

/// Samples eta(t_i), eta'(t_i), eta''(t_i) of one closed curve.
struct ComponentSamples {
  CVector eta;
  CVector eta_dot;
  CVector eta_ddot;
};

/// Sampled boundary of a domain bounded by the unit circle (component 0) and
/// m inner curves, n equidistant nodes t_i = 2 pi i / n per component.
/// Global node index k lives on component k / n.
struct BoundaryParametrization {
  int n = 0;
  int m = 0;
  CVector eta;
  CVector eta_dot;
  CVector eta_ddot; // optional; spectral derivative of eta_dot when empty
  // Ellipses behind components 1..m when the boundary came from
  // build_preimage_boundary (component 0 is then the unit circle).
  std::vector<EllipseParams> ellipses;

  int size() const { return (m + 1) * n; }
  int component_of(int k) const { return k / n; }
  double node(int k) const { return kTwoPi * (k % n) / n; }
  double weight() const { return kTwoPi / n; }

  auto component(int j) const { return eta.segment(static_cast<Eigen::Index>(j) * n, n); }
  auto component_dot(int j) const { return eta_dot.segment(static_cast<Eigen::Index>(j) * n, n); }
};

bool is_power_of_two(int n);

/// log((1+w)/(1-w)); maps the unit disk onto the strip |Im| < pi/2.
Complex psi(Complex w);
/// tanh(zeta/2), the inverse of psi.
Complex psi_inv(Complex zeta);
/// Derivative of psi_inv at zeta expressed through w = psi_inv(zeta).
inline Complex psi_inv_derivative_from_image(Complex w) { return 0.5 * (1.0 - w * w); }

ComponentSamples parametrize_ellipse(const EllipseParams& p, int n);

/// Unit circle samples; the quarter nodes are exact (1, i, -1, -i).
ComponentSamples unit_circle(int n);

/// Preimage domain G: the unit circle plus the psi_inv images of the ellipses.
/// Throws GeometryError if any ellipse leaves the strip or two ellipses meet.
BoundaryParametrization build_preimage_boundary(std::span<const EllipseParams> params, int n);

/// eta(t_a) - eta(t_b) for nodes a, b of one component. Uses closed forms
/// that avoid cancellation between close nodes when the boundary records its
/// ellipses; plain subtraction otherwise.
class NodeDifferences {
public:
  explicit NodeDifferences(const BoundaryParametrization& bp);
  Complex operator()(int a, int b) const;

private:
  const BoundaryParametrization* bp_;
  bool exact_ = false;
  std::vector<double> sin_half_, cos_half_; // sin, cos of pi k / n for k in [0, 2n)
  CVector cosh_half_;                        // cosh of half the strip point per node
};

/// Disjointness check on ellipses sampled at `samples` points each.
void check_ellipses_disjoint(std::span<const EllipseParams> params, int samples = 256);

/// Winding number of the closed polygon through `curve` around z.
int winding_number(std::span<const Complex> curve, Complex z);
int winding_number(const CVector& curve, Complex z);

/// Smallest distance from z to any sampled boundary node.
double min_node_distance(const BoundaryParametrization& bp, Complex z);

/// True when z is inside the unit circle and outside every inner curve, with
/// a clearance of at least `tol` from the sampled boundary.
bool inside_domain(const BoundaryParametrization& bp, Complex z, double tol = 1e-12);

} // namespace stripmap
