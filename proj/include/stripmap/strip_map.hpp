#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "stripmap/bie_solver.hpp"

namespace stripmap {

/// Conformal map Phi from a preimage domain G onto a strip with slits of
/// prescribed angles, normalized by Phi(+-1) = +-inf and Phi(i) = i pi/2.
///
/// Phi(w) = shift + (w - alpha) f(w) + psi(w) where A f = gamma + h + i rho on
/// the boundary and shift = -(i - alpha) f(i).
struct MapData {
  BoundaryParametrization bp;
  std::vector<double> theta;
  Complex alpha;
  CVector A;
  BieSolution bie;

  CVector f_boundary;
  Complex f_at_i;
  Complex shift;

  CVector zeta;           // Phi(eta(t)); +-inf where eta = +-1
  CVector zeta_tilde;     // psi_inv(zeta(t)), boundary of the bounded image domain
  CVector zeta_tilde_dot; // spectral derivative of zeta_tilde per component
};

struct SlitImage {
  Complex center;
  double length;
  double theta;
};

/// 0 on the unit circle, Im[e^{-i theta_j} psi(eta)] on inner component j.
RVector strip_gamma(const BoundaryParametrization& bp, const std::vector<double>& theta);

/// Base point for A: the psi_inv image of a real point in [-3, 3] that is
/// farthest from the boundary; falls back to a polar grid in the disk.
Complex default_alpha(const BoundaryParametrization& bp);

MapData build_map(const BoundaryParametrization& bp, const std::vector<double>& theta, Complex alpha,
                  const SolverOptions& opts = {});
MapData build_map(const KernelSet& ks, const SolverOptions& opts = {});

/// How the end points of a boundary image are located. Nodes takes the
/// extreme nodes as they are; Interpolated refines them on the trigonometric
/// interpolant (parabola through three nodes, then Newton).
enum class SlitExtraction { Nodes, Interpolated };

/// Center and length of each inner boundary image measured along its angle.
std::vector<SlitImage> extract_slit_images(const MapData& md, SlitExtraction mode = SlitExtraction::Nodes);

/// Phi(w) for w strictly inside G.
std::vector<Complex> evaluate_map(const MapData& md, std::span<const Complex> w);

/// Phi^{-1}(z) for z strictly inside the slit strip, through the Cauchy
/// integral of eta over the boundary of psi_inv(Omega).
std::vector<Complex> inverse_map(const MapData& md, std::span<const Complex> z);

/// Batch forms that report points outside the domain through `ok` instead of
/// throwing; their values are NaN.
struct MapBatch {
  std::vector<Complex> values;
  std::vector<bool> ok;
};
MapBatch evaluate_map_batch(const MapData& md, std::span<const Complex> w);
MapBatch inverse_map_batch(const MapData& md, std::span<const Complex> z);

/// CSV dump: node,component,eta_re,eta_im,zeta_re,zeta_im,f_re,f_im
void write_boundary_csv(const MapData& md, std::ostream& os);

} // namespace stripmap
