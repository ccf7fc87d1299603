#include "stripmap/strip_map.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "stripmap/fourier.hpp"

namespace stripmap {

RVector strip_gamma(const BoundaryParametrization& bp, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != bp.m + 1)
    throw std::invalid_argument("theta needs one angle per boundary component");
  RVector gamma = RVector::Zero(bp.size());
  for (int k = bp.n; k < bp.size(); ++k) {
    const Complex w = bp.eta[k];
    if (std::abs(1.0 - w) == 0.0 || std::abs(1.0 + w) == 0.0)
      throw GeometryError("inner boundary passes through +-1 where psi is singular");
    gamma[k] = (std::polar(1.0, -theta[bp.component_of(k)]) * psi(w)).imag();
  }
  return gamma;
}

Complex default_alpha(const BoundaryParametrization& bp) {
  Complex best = 0.0;
  double best_dist = -1.0;
  auto consider = [&](Complex c) {
    if (!inside_domain(bp, c)) return;
    const double d = min_node_distance(bp, c);
    if (d > best_dist) {
      best_dist = d;
      best = c;
    }
  };
  for (int k = -6; k <= 6; ++k) consider(psi_inv(Complex(0.5 * k, 0.0)));
  if (best_dist > 0.0) return best;
  for (int ir = 1; ir < 20; ++ir)
    for (int ia = 0; ia < 64; ++ia) consider(std::polar(0.05 * ir, kTwoPi * ia / 64));
  if (best_dist <= 0.0) throw GeometryError("no interior base point found for the preimage domain");
  return best;
}

MapData build_map(const BoundaryParametrization& bp, const std::vector<double>& theta, Complex alpha,
                  const SolverOptions& opts) {
  return build_map(build_kernels(bp, theta, alpha), opts);
}

MapData build_map(const KernelSet& ks, const SolverOptions& opts) {
  const auto& bp = ks.bp;
  const int n = bp.n;
  MapData md;
  md.bp = bp;
  md.theta = ks.theta;
  md.alpha = ks.alpha;
  md.A = ks.A;
  md.bie = solve_bie(ks, strip_gamma(bp, ks.theta), opts);

  const RVector hn = md.bie.h_nodes(n);
  md.f_boundary.resize(bp.size());
  for (int k = 0; k < bp.size(); ++k)
    md.f_boundary[k] = Complex(md.bie.gamma[k] + hn[k], md.bie.rho[k]) / md.A[k];

  // i = eta_0(pi/2) is a boundary node, so f(i) is a boundary value
  md.f_at_i = md.f_boundary[n / 4];
  md.shift = -(kI - md.alpha) * md.f_at_i;

  md.zeta.resize(bp.size());
  md.zeta_tilde.resize(bp.size());
  const double inf = std::numeric_limits<double>::infinity();
  for (int k = 0; k < bp.size(); ++k) {
    const Complex w = bp.eta[k];
    const Complex q = md.shift + (w - md.alpha) * md.f_boundary[k];
    if (w == Complex(1.0, 0.0)) md.zeta[k] = Complex(inf, 0.0);
    else if (w == Complex(-1.0, 0.0)) md.zeta[k] = Complex(-inf, 0.0);
    else md.zeta[k] = q + psi(w);
    // tanh((psi(w) + q)/2) by the addition theorem, finite at w = +-1
    const Complex T = std::tanh(0.5 * q);
    md.zeta_tilde[k] = (w + T) / (1.0 + w * T);
  }
  md.zeta_tilde_dot.resize(bp.size());
  for (int j = 0; j <= bp.m; ++j)
    md.zeta_tilde_dot.segment(j * n, n) = trig_derivative(CVector(md.zeta_tilde.segment(j * n, n)));
  return md;
}

namespace {

// Locate an extremum of Re v(t) on the trigonometric interpolant, starting
// from the best node and a three-point parabola.
double refine_extremum(const TrigInterpolant& v, const RVector& u, int k, double h) {
  const int n = static_cast<int>(u.size());
  const double um = u[(k - 1 + n) % n], u0 = u[k], up = u[(k + 1) % n];
  const double curv = um - 2.0 * u0 + up;
  double t = h * k;
  if (curv != 0.0) t += 0.5 * h * (um - up) / curv;
  for (int it = 0; it < 20; ++it) {
    const double d1 = v.derivative(t, 1).real();
    const double d2 = v.derivative(t, 2).real();
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    if (std::abs(step) > h) break; // stay in the node's neighbourhood
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return t;
}

void check_length(double len, int j) {
  if (len >= 1e-13) return;
  std::ostringstream os;
  os << "boundary image of component " << j << " degenerated to a point";
  throw GeometryError(os.str());
}

} // namespace

std::vector<SlitImage> extract_slit_images(const MapData& md, SlitExtraction mode) {
  const int n = md.bp.n;
  const double h = md.bp.weight();
  std::vector<SlitImage> out;
  for (int j = 1; j <= md.bp.m; ++j) {
    const Complex rot = std::polar(1.0, -md.theta[j]);
    const CVector v = rot * md.zeta.segment(j * n, n);
    const RVector u = v.real();
    Eigen::Index kmax = 0, kmin = 0;
    u.maxCoeff(&kmax);
    u.minCoeff(&kmin);
    const TrigInterpolant interp(v);
    if (mode == SlitExtraction::Nodes) {
      const Complex vmax = v[kmax], vmin = v[kmin];
      check_length(vmax.real() - vmin.real(), j);
      out.push_back({std::conj(rot) * 0.5 * (vmax + vmin), vmax.real() - vmin.real(), md.theta[j]});
      continue;
    }
    const double tmax = refine_extremum(interp, u, static_cast<int>(kmax), h);
    const double tmin = refine_extremum(interp, u, static_cast<int>(kmin), h);
    const Complex vmax = interp.value(tmax), vmin = interp.value(tmin);
    const double len = vmax.real() - vmin.real();
    check_length(len, j);
    out.push_back({std::conj(rot) * 0.5 * (vmax + vmin), len, md.theta[j]});
  }
  return out;
}

namespace {

// Runs eval on the whole batch; if it throws because some point sits on a
// node, retries point by point and marks the offenders.
template <class Eval>
CauchyResult robust_cauchy(Eval eval, std::span<const Complex> pts, std::vector<bool>& ok) {
  try {
    return eval(pts);
  } catch (const GeometryError&) {
    CauchyResult out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      try {
        const auto one = eval(pts.subspan(i, 1));
        out.values.push_back(one.values[0]);
        out.near_boundary.push_back(one.near_boundary[0]);
        out.kernel_sums.push_back(one.kernel_sums[0]);
      } catch (const GeometryError&) {
        ok[i] = false;
        out.values.push_back(Complex(NAN, NAN));
        out.near_boundary.push_back(true);
        out.kernel_sums.push_back(0.0);
      }
    }
    return out;
  }
}

std::string describe(const char* what, Complex p) {
  std::ostringstream os;
  os << "point " << p << what;
  return os.str();
}

} // namespace

MapBatch evaluate_map_batch(const MapData& md, std::span<const Complex> w) {
  MapBatch out{std::vector<Complex>(w.size(), Complex(NAN, NAN)), std::vector<bool>(w.size(), false)};
  std::vector<Complex> pts;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::isfinite(w[i].real()) && std::isfinite(w[i].imag()) && inside_domain(md.bp, w[i], 1e-13)) {
      pts.push_back(w[i]);
      where.push_back(i);
    }
  std::vector<bool> ok(pts.size(), true);
  const auto f = robust_cauchy(
      [&](std::span<const Complex> p) { return cauchy_eval_refined(md.bp.eta, md.bp.eta_dot, md.f_boundary, md.bp.n, p); },
      pts, ok);
  for (std::size_t q = 0; q < pts.size(); ++q) {
    if (!ok[q]) continue;
    out.values[where[q]] = md.shift + (pts[q] - md.alpha) * f.values[q] + psi(pts[q]);
    out.ok[where[q]] = true;
  }
  return out;
}

MapBatch inverse_map_batch(const MapData& md, std::span<const Complex> z) {
  MapBatch out{std::vector<Complex>(z.size(), Complex(NAN, NAN)), std::vector<bool>(z.size(), false)};
  std::vector<Complex> wt;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (std::abs(z[i].imag()) < kHalfPi) {
      wt.push_back(psi_inv(z[i]));
      where.push_back(i);
    }
  std::vector<bool> ok(wt.size(), true);
  const auto g = robust_cauchy(
      [&](std::span<const Complex> p) {
        return cauchy_eval_refined(md.zeta_tilde, md.zeta_tilde_dot, md.bp.eta, md.bp.n, p);
      },
      wt, ok);
  const double n = md.bp.n;
  for (std::size_t q = 0; q < wt.size(); ++q) {
    if (!ok[q] || std::abs(g.kernel_sums[q] / (kI * n) - 1.0) > 0.5) continue;
    out.values[where[q]] = g.values[q];
    out.ok[where[q]] = true;
  }
  return out;
}

std::vector<Complex> evaluate_map(const MapData& md, std::span<const Complex> w) {
  auto res = evaluate_map_batch(md, w);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!res.ok[i]) throw GeometryError(describe(" is not inside the preimage domain", w[i]));
  return std::move(res.values);
}

std::vector<Complex> inverse_map(const MapData& md, std::span<const Complex> z) {
  for (const Complex p : z)
    if (!(std::abs(p.imag()) < kHalfPi)) throw GeometryError(describe(" is outside the open strip", p));
  auto res = inverse_map_batch(md, z);
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!res.ok[i]) throw GeometryError(describe(" is not inside the slit domain", z[i]));
  return std::move(res.values);
}

void write_boundary_csv(const MapData& md, std::ostream& os) {
  os << "node,component,eta_re,eta_im,zeta_re,zeta_im,f_re,f_im\n";
  os.precision(17);
  for (int k = 0; k < md.bp.size(); ++k) {
    os << k % md.bp.n << ',' << md.bp.component_of(k) << ',' << md.bp.eta[k].real() << ',' << md.bp.eta[k].imag()
       << ',' << md.zeta[k].real() << ',' << md.zeta[k].imag() << ',' << md.f_boundary[k].real() << ','
       << md.f_boundary[k].imag() << '\n';
  }
}

} // namespace stripmap
