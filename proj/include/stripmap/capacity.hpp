#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stripmap/elliptic.hpp"
#include "stripmap/preimage.hpp"

namespace stripmap {

/// Condenser (S, E, delta): the slits are the plates, delta their potential levels.
struct CondenserSpec {
  StripSlitDomain domain;
  std::vector<double> delta;

  /// All plates at level 1.
  static CondenserSpec classical(StripSlitDomain domain);
  void validate() const;
};

struct CapacityResult {
  double cap = 0.0;
  RVector a;        // charges a_k
  double c = 0.0;   // additive constant of the linear system; unused by cap
  RMatrix h;        // (m+1) x m, column k holds h_k
  double h_spread = 0.0; // worst per-component deviation of the h fields
  PreimageResult preimage;
  int n = 0;
  double r = 0.0;
};

/// Charges and capacity of the condenser (D, union of the holes of G, delta)
/// for an already computed preimage domain. Uses log|eta - alpha_k| data with
/// alpha_k the psi_inv image of ellipse center k.
CapacityResult capacity_on_preimage(PreimageResult preimage, const std::vector<double>& delta,
                                    const SolverOptions& opts = {});

/// Preimage iteration followed by the charge system; cap = 2 pi sum delta_k a_k.
CapacityResult capacity(const CondenserSpec& spec, const IterationConfig& cfg,
                        const IterationObserver& observer = {});

struct StudySample {
  std::string label;
  CondenserSpec spec;
  IterationConfig cfg;
};

struct StudyRow {
  std::string param;
  double cap = 0.0;
  bool converged = false;
  int iters = 0;
  std::string error; // empty unless the sample failed
};

using StudyFamily = std::function<StudySample(std::size_t)>;

/// Evaluates the family at indices 0..samples-1; failures are recorded per row.
std::vector<StudyRow> capacity_study(const StudyFamily& family, std::size_t samples);

/// CSV with header param,cap,converged,iters (cap empty for failed rows).
std::string study_csv(const std::vector<StudyRow>& rows);

/// E = (-x d + J) U (x d + J) for x in params. When r_fraction > 0 the aspect
/// ratio is min(cfg.r, r_fraction * x).
StudyFamily symmetric_pair_family(SlitSpec J, Complex direction, std::vector<double> params,
                                  IterationConfig cfg, double r_fraction = 0.0);

/// E = s d + base for s in params.
StudyFamily translated_family(std::vector<SlitSpec> base, Complex direction, std::vector<double> params,
                              IterationConfig cfg);

/// E = [anchor, x + i y] over the grid xs x ys; grid points too close to the
/// anchor or outside the strip become failed rows.
StudyFamily endpoint_grid_family(Complex anchor, std::vector<double> xs, std::vector<double> ys,
                                 IterationConfig cfg);

/// m horizontal intervals of length 2/m with random centers on [-4, 4]
/// (in_box = false) or in [-4, 4] x [-1, 1] (in_box = true). Sample i uses
/// seed (seed, i); placements keep pairwise distances >= 1e-3.
StudyFamily random_intervals_family(int m, bool in_box, std::uint64_t seed, IterationConfig cfg);

} // namespace stripmap
