#pragma once

#include <span>
#include <vector>

#include "stripmap/neumann_kernel.hpp"

namespace stripmap {

struct SolverOptions {
  double tol = 1e-14;
  int maxit = 100;
};

struct SolverStats {
  int iterations = 0;
  double residual = 0.0;          // ||(I-N) rho + M gamma||_inf / ||M gamma||_inf
  std::vector<double> history;    // GMRES residual estimates
};

struct RhoSolution {
  RVector rho;
  SolverStats stats;
};

struct HValues {
  RVector h;       // mean of the pointwise field per component
  RVector spread;  // its standard deviation per component
};

struct BieSolution {
  RVector gamma;
  RVector rho;
  HValues h;
  SolverStats stats;

  /// Piecewise-constant h expanded to one value per node.
  RVector h_nodes(int n) const;
};

/// Solves (I - N) rho = -M gamma by unrestarted GMRES. Throws SolverError
/// carrying the residual history if the tolerance is not met in maxit steps.
RhoSolution solve_rho(const KernelSet& ks, const RVector& gamma, const SolverOptions& opts = {});

/// h = [M rho - (I - N) gamma] / 2, averaged over each component.
HValues compute_h(const KernelSet& ks, const RVector& rho, const RVector& gamma);

BieSolution solve_bie(const KernelSet& ks, const RVector& gamma, const SolverOptions& opts = {});

struct CauchyResult {
  std::vector<Complex> values;
  std::vector<bool> near_boundary; // within five local node spacings of the boundary
  std::vector<Complex> kernel_sums; // sum eta'_i / (eta_i - w); n i times the winding number
};

/// Normalized trapezoidal Cauchy sum
///   f(w) = sum f_i eta'_i / (eta_i - w) / sum eta'_i / (eta_i - w)
/// over all boundary nodes. Throws GeometryError for points within 1e-13 of a node.
CauchyResult cauchy_eval(const BoundaryParametrization& bp, const CVector& boundary_values,
                         std::span<const Complex> points);

/// Same sum for an arbitrary sampled contour (nodes, derivatives).
CauchyResult cauchy_eval(const CVector& nodes, const CVector& derivs, const CVector& boundary_values,
                         std::span<const Complex> points);

/// Cauchy sum over m + 1 components of n nodes each. Points flagged as near
/// the boundary are evaluated again on the trigonometric interpolants of
/// nodes, derivatives and values at 4, 16, ... up to max_factor times the
/// nodes. kernel_sums stay scaled to n nodes per component.
CauchyResult cauchy_eval_refined(const CVector& nodes, const CVector& derivs, const CVector& boundary_values, int n,
                                 std::span<const Complex> points, int max_factor = 64);

} // namespace stripmap
