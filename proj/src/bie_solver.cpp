#include "stripmap/bie_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stripmap/fourier.hpp"
#include "stripmap/gmres.hpp"

namespace stripmap {

RVector BieSolution::h_nodes(int n) const {
  RVector out(h.h.size() * n);
  for (Eigen::Index j = 0; j < h.h.size(); ++j) out.segment(j * n, n).setConstant(h.h[j]);
  return out;
}

RhoSolution solve_rho(const KernelSet& ks, const RVector& gamma, const SolverOptions& opts) {
  if (gamma.size() != ks.bp.size()) throw std::invalid_argument("gamma sample count does not match the kernel");
  if (!gamma.allFinite()) throw std::invalid_argument("gamma has non-finite samples");

  const RVector rhs = -ks.apply_M(gamma);
  auto op = [&ks](const RVector& x) { return ks.apply_I_minus_N(x); };
  GmresResult g = gmres(op, rhs, opts.tol, opts.maxit);

  RhoSolution out;
  out.rho = std::move(g.x);
  out.stats.iterations = g.iterations;
  out.stats.history = std::move(g.residuals);
  const double scale = rhs.lpNorm<Eigen::Infinity>();
  out.stats.residual = scale > 0.0 ? (ks.apply_I_minus_N(out.rho) - rhs).lpNorm<Eigen::Infinity>() / scale : 0.0;
  if (!g.converged) {
    std::ostringstream os;
    os << "GMRES did not reach tol " << opts.tol << " in " << opts.maxit << " iterations (last estimate "
       << (out.stats.history.empty() ? 0.0 : out.stats.history.back()) << ")";
    throw SolverError(os.str(), out.stats.history);
  }
  return out;
}

HValues compute_h(const KernelSet& ks, const RVector& rho, const RVector& gamma) {
  const RVector field = 0.5 * (ks.apply_M(rho) - ks.apply_I_minus_N(gamma));
  const int n = ks.bp.n;
  HValues out{RVector(ks.bp.m + 1), RVector(ks.bp.m + 1)};
  for (int j = 0; j <= ks.bp.m; ++j) {
    const auto seg = field.segment(j * n, n);
    const double mean = seg.mean();
    out.h[j] = mean;
    out.spread[j] = std::sqrt((seg.array() - mean).square().mean());
  }
  return out;
}

BieSolution solve_bie(const KernelSet& ks, const RVector& gamma, const SolverOptions& opts) {
  auto rs = solve_rho(ks, gamma, opts);
  BieSolution sol;
  sol.gamma = gamma;
  sol.h = compute_h(ks, rs.rho, gamma);
  sol.rho = std::move(rs.rho);
  sol.stats = std::move(rs.stats);
  return sol;
}

CauchyResult cauchy_eval(const CVector& nodes, const CVector& derivs, const CVector& boundary_values,
                         std::span<const Complex> points) {
  const auto size = nodes.size();
  if (derivs.size() != size || boundary_values.size() != size)
    throw std::invalid_argument("Cauchy sum needs matching node, derivative and value counts");

  CauchyResult out;
  out.values.reserve(points.size());
  out.near_boundary.reserve(points.size());
  out.kernel_sums.reserve(points.size());
  for (const Complex w : points) {
    Complex num = 0.0, den = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    Eigen::Index imin = 0;
    for (Eigen::Index i = 0; i < size; ++i) {
      const Complex d = nodes[i] - w;
      const double d2 = std::norm(d);
      if (d2 < dmin) {
        dmin = d2;
        imin = i;
      }
      const Complex q = derivs[i] * std::conj(d) / d2;
      num += boundary_values[i] * q;
      den += q;
    }
    dmin = std::sqrt(dmin);
    if (dmin < 1e-13) {
      std::ostringstream os;
      os << "Cauchy evaluation point " << w << " lies on the boundary";
      throw GeometryError(os.str());
    }
    out.values.push_back(num / den);
    out.kernel_sums.push_back(den);
    const double spacing = std::max(std::abs(nodes[imin] - nodes[imin > 0 ? imin - 1 : imin + 1]),
                                    std::abs(nodes[imin] - nodes[imin + 1 < size ? imin + 1 : imin - 1]));
    out.near_boundary.push_back(dmin < 5.0 * spacing);
  }
  return out;
}

namespace {

CVector upsample_components(const CVector& v, int n, int factor) {
  const int comps = static_cast<int>(v.size()) / n;
  CVector out(v.size() * factor);
  for (int j = 0; j < comps; ++j)
    out.segment(static_cast<Eigen::Index>(j) * n * factor, n * factor) =
        trig_upsample(CVector(v.segment(static_cast<Eigen::Index>(j) * n, n)), factor);
  return out;
}

} // namespace

CauchyResult cauchy_eval_refined(const CVector& nodes, const CVector& derivs, const CVector& boundary_values, int n,
                                 std::span<const Complex> points, int max_factor) {
  CauchyResult res = cauchy_eval(nodes, derivs, boundary_values, points);
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (res.near_boundary[i]) todo.push_back(i);

  for (int factor = 4; factor <= max_factor && !todo.empty(); factor *= 4) {
    const CVector fn = upsample_components(nodes, n, factor);
    const CVector fd = upsample_components(derivs, n, factor);
    const CVector fv = upsample_components(boundary_values, n, factor);
    std::vector<Complex> pts;
    for (const auto i : todo) pts.push_back(points[i]);
    const auto fine = cauchy_eval(fn, fd, fv, pts);
    std::vector<std::size_t> still;
    for (std::size_t q = 0; q < todo.size(); ++q) {
      const auto i = todo[q];
      res.values[i] = fine.values[q];
      res.kernel_sums[i] = fine.kernel_sums[q] / static_cast<double>(factor);
      res.near_boundary[i] = fine.near_boundary[q];
      if (fine.near_boundary[q]) still.push_back(i);
    }
    todo = std::move(still);
  }
  return res;
}

CauchyResult cauchy_eval(const BoundaryParametrization& bp, const CVector& boundary_values,
                         std::span<const Complex> points) {
  return cauchy_eval(bp.eta, bp.eta_dot, boundary_values, points);
}

} // namespace stripmap
