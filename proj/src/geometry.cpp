#include "stripmap/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace stripmap {

SlitSpec::SlitSpec(Complex a, Complex b) : a_(a), b_(b) {
  if (!(std::abs(a.imag()) < kHalfPi) || !(std::abs(b.imag()) < kHalfPi))
    throw GeometryError("slit endpoint outside the strip |Im z| < pi/2");
  center_ = 0.5 * (a + b);
  length_ = std::abs(b - a);
  if (!(length_ > 0.0)) throw GeometryError("slit has zero length");
  double th = std::arg(b - a);
  if (th <= -kHalfPi) th += kPi;
  if (th > kHalfPi) th -= kPi;
  theta_ = th;
}

StripSlitDomain::StripSlitDomain(std::vector<SlitSpec> slits) : slits_(std::move(slits)) {
  if (slits_.empty()) throw GeometryError("domain needs at least one slit");
  for (std::size_t i = 0; i < slits_.size(); ++i) {
    for (std::size_t j = i + 1; j < slits_.size(); ++j) {
      const double d = segment_distance(slits_[i].a(), slits_[i].b(), slits_[j].a(), slits_[j].b());
      if (!(d > kSlitSeparationTol)) {
        std::ostringstream os;
        os << "slits " << i << " and " << j << " intersect or touch";
        throw GeometryError(os.str());
      }
    }
  }
}

double StripSlitDomain::distance_to_slits(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : slits_) best = std::min(best, point_segment_distance(z, s.a(), s.b()));
  return best;
}

double point_segment_distance(Complex z, Complex p0, Complex p1) {
  const Complex d = p1 - p0;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - p0);
  double t = ((z - p0) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (p0 + t * d));
}

namespace {

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

bool segments_intersect(Complex p0, Complex p1, Complex q0, Complex q1) {
  const double d1 = cross(q1 - q0, p0 - q0);
  const double d2 = cross(q1 - q0, p1 - q0);
  const double d3 = cross(p1 - p0, q0 - p0);
  const double d4 = cross(p1 - p0, q1 - p0);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool boxes_touch(const std::vector<Complex>& P, const std::vector<Complex>& Q) {
  auto box = [](const std::vector<Complex>& v) {
    double x0 = v[0].real(), x1 = x0, y0 = v[0].imag(), y1 = y0;
    for (const auto& p : v) {
      x0 = std::min(x0, p.real()); x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag()); y1 = std::max(y1, p.imag());
    }
    return std::array<double, 4>{x0, x1, y0, y1};
  };
  const auto bp = box(P), bq = box(Q);
  const double tol = kSlitSeparationTol;
  return bp[0] <= bq[1] + tol && bq[0] <= bp[1] + tol && bp[2] <= bq[3] + tol && bq[2] <= bp[3] + tol;
}

} // namespace

double segment_distance(Complex p0, Complex p1, Complex q0, Complex q1) {
  if (segments_intersect(p0, p1, q0, q1)) return 0.0;
  return std::min({point_segment_distance(p0, q0, q1), point_segment_distance(p1, q0, q1),
                   point_segment_distance(q0, p0, p1), point_segment_distance(q1, p0, p1)});
}

double EllipseParams::max_abs_imag() const {
  // Im of 0.5 a e^{i theta}(cos t - i r sin t) = 0.5 a (sin(theta) cos t - r cos(theta) sin t)
  const double amp = 0.5 * a * std::hypot(std::sin(theta), r * std::cos(theta));
  return std::abs(z.imag()) + amp;
}

Complex EllipseParams::point(double t) const {
  return z + 0.5 * a * std::polar(1.0, theta) * Complex(std::cos(t), -r * std::sin(t));
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Complex psi(Complex w) {
  if (w == Complex(1.0, 0.0) || w == Complex(-1.0, 0.0))
    throw DomainError("psi is singular at w = +-1");
  return std::log((1.0 + w) / (1.0 - w));
}

Complex psi_inv(Complex zeta) { return std::tanh(0.5 * zeta); }

ComponentSamples parametrize_ellipse(const EllipseParams& p, int n) {
  ComponentSamples out{CVector(n), CVector(n), CVector(n)};
  const Complex rot = 0.5 * p.a * std::polar(1.0, p.theta);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    const double c = std::cos(t), s = std::sin(t);
    out.eta[i] = p.z + rot * Complex(c, -p.r * s);
    out.eta_dot[i] = -rot * Complex(s, p.r * c);
    out.eta_ddot[i] = -rot * Complex(c, -p.r * s);
  }
  return out;
}

ComponentSamples unit_circle(int n) {
  ComponentSamples out{CVector(n), CVector(n), CVector(n)};
  for (int i = 0; i < n; ++i) {
    Complex e;
    if (4 * i % n == 0) {
      static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      e = quarter[(4 * i / n) % 4];
    } else {
      e = std::polar(1.0, kTwoPi * i / n);
    }
    out.eta[i] = e;
    out.eta_dot[i] = kI * e;
    out.eta_ddot[i] = -e;
  }
  return out;
}

void check_ellipses_disjoint(std::span<const EllipseParams> params, int samples) {
  std::vector<std::vector<Complex>> polys;
  polys.reserve(params.size());
  for (std::size_t j = 0; j < params.size(); ++j) {
    const auto& p = params[j];
    if (!(p.a > 0.0) || !(p.r > 0.0 && p.r <= 1.0)) {
      std::ostringstream os;
      os << "ellipse " << j << " has invalid axis (a=" << p.a << ", r=" << p.r << ")";
      throw GeometryError(os.str());
    }
    if (!(p.max_abs_imag() < kHalfPi)) {
      std::ostringstream os;
      os << "ellipse " << j << " leaves the strip; choose a smaller r";
      throw GeometryError(os.str());
    }
    std::vector<Complex> poly(samples);
    for (int i = 0; i < samples; ++i) poly[i] = p.point(kTwoPi * i / samples);
    polys.push_back(std::move(poly));
  }
  for (std::size_t a = 0; a < polys.size(); ++a) {
    for (std::size_t b = a + 1; b < polys.size(); ++b) {
      const auto& P = polys[a];
      const auto& Q = polys[b];
      if (!boxes_touch(P, Q)) continue;
      bool hit = winding_number(P, Q[0]) != 0 || winding_number(Q, P[0]) != 0;
      for (int i = 0; i < samples && !hit; ++i) {
        const Complex p0 = P[i], p1 = P[(i + 1) % samples];
        for (int k = 0; k < samples; ++k) {
          if (segment_distance(p0, p1, Q[k], Q[(k + 1) % samples]) <= kSlitSeparationTol) {
            hit = true;
            break;
          }
        }
      }
      if (hit) {
        std::ostringstream os;
        os << "ellipses " << a << " and " << b << " overlap; choose a smaller r";
        throw GeometryError(os.str());
      }
    }
  }
}

BoundaryParametrization build_preimage_boundary(std::span<const EllipseParams> params, int n) {
  if (!is_power_of_two(n) || n < 4) throw GeometryError("n must be a power of two >= 4");
  check_ellipses_disjoint(params);
  BoundaryParametrization bp;
  bp.n = n;
  bp.m = static_cast<int>(params.size());
  bp.eta.resize(bp.size());
  bp.eta_dot.resize(bp.size());
  bp.eta_ddot.resize(bp.size());
  const auto circle = unit_circle(n);
  bp.eta.head(n) = circle.eta;
  bp.eta_dot.head(n) = circle.eta_dot;
  bp.eta_ddot.head(n) = circle.eta_ddot;
  bp.ellipses.assign(params.begin(), params.end());
  for (int j = 1; j <= bp.m; ++j) {
    const auto ell = parametrize_ellipse(params[j - 1], n);
    for (int i = 0; i < n; ++i) {
      const Complex w = psi_inv(ell.eta[i]);
      const Complex dw = psi_inv_derivative_from_image(w);
      bp.eta[j * n + i] = w;
      bp.eta_dot[j * n + i] = dw * ell.eta_dot[i];
      bp.eta_ddot[j * n + i] = dw * (ell.eta_ddot[i] - w * ell.eta_dot[i] * ell.eta_dot[i]);
    }
  }
  return bp;
}

NodeDifferences::NodeDifferences(const BoundaryParametrization& bp)
    : bp_(&bp), exact_(static_cast<int>(bp.ellipses.size()) == bp.m) {
  if (!exact_) return;
  const int n = bp.n;
  sin_half_.resize(2 * n);
  cos_half_.resize(2 * n);
  // sin(pi k / n) with the argument reduced in integers, so small values keep
  // full relative accuracy near every multiple of pi
  auto sin_pi = [n](int k) {
    k %= 2 * n;
    const double sign = k >= n ? -1.0 : 1.0;
    if (k >= n) k -= n;
    if (2 * k > n) k = n - k;
    return sign * std::sin(kPi * k / n);
  };
  for (int k = 0; k < 2 * n; ++k) {
    sin_half_[k] = sin_pi(k);
    cos_half_[k] = sin_pi(k + n / 2);
  }
  cosh_half_.resize(bp.size());
  for (int j = 1; j <= bp.m; ++j) {
    const auto& e = bp.ellipses[j - 1];
    for (int i = 0; i < n; ++i) cosh_half_[j * n + i] = std::cosh(0.5 * e.point(kTwoPi * i / n));
  }
}

Complex NodeDifferences::operator()(int a, int b) const {
  const BoundaryParametrization& bp = *bp_;
  if (!exact_ || a / bp.n != b / bp.n) return bp.eta[a] - bp.eta[b];
  const int n = bp.n;
  const int j = a / n, ia = a % n, ib = b % n;
  const int sum = ia + ib;
  const double sd = sin_half_[(ia - ib + 2 * n) % (2 * n)]; // sin((t_a - t_b) / 2)
  if (j == 0) return 2.0 * kI * sd * Complex(cos_half_[sum], sin_half_[sum]);
  // tanh(x) - tanh(y) = sinh(x - y) / (cosh x cosh y) with x - y from product formulas
  const auto& e = bp.ellipses[j - 1];
  const Complex dz = 0.5 * e.a * std::polar(1.0, e.theta) * Complex(-2.0 * sin_half_[sum] * sd, -2.0 * e.r * cos_half_[sum] * sd);
  return std::sinh(0.5 * dz) / (cosh_half_[a] * cosh_half_[b]);
}

int winding_number(std::span<const Complex> curve, Complex z) {
  // Sunday's crossing rule with signed edge orientation.
  int wn = 0;
  const std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = curve[i], q = curve[(i + 1) % n];
    const double side = cross(q - p, z - p);
    if (p.imag() <= z.imag()) {
      if (q.imag() > z.imag() && side > 0) ++wn;
    } else {
      if (q.imag() <= z.imag() && side < 0) --wn;
    }
  }
  return wn;
}

int winding_number(const CVector& curve, Complex z) {
  return winding_number(std::span<const Complex>(curve.data(), static_cast<std::size_t>(curve.size())), z);
}

double min_node_distance(const BoundaryParametrization& bp, Complex z) {
  return (bp.eta.array() - z).abs().minCoeff();
}

bool inside_domain(const BoundaryParametrization& bp, Complex z, double tol) {
  if (min_node_distance(bp, z) < tol) return false;
  int total = 0;
  for (int j = 0; j <= bp.m; ++j) total += winding_number(CVector(bp.component(j)), z);
  return total == 1 && winding_number(CVector(bp.component(0)), z) == 1;
}

} // namespace stripmap
