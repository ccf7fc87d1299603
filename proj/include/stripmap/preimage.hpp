#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stripmap/strip_map.hpp"

namespace stripmap {

struct IterationConfig {
  int n = 1024;
  double r = 0.2;
  double eps = 1e-14;
  int max_iter = 100;
  SlitExtraction extraction = SlitExtraction::Nodes;
  SolverOptions solver;

  void validate() const;
};

struct IterationRecord {
  int k;
  double error;
  int gmres_iterations;
  double elapsed_ms;
};

struct PreimageResult {
  StripSlitDomain domain;
  IterationConfig config;
  std::vector<EllipseParams> params;  // ellipses of the returned preimage domain
  MapData map;                        // Phi from that domain onto the slit strip
  std::vector<SlitImage> slit_images; // slits produced by `map`
  std::vector<double> error_history;  // E_k
  std::vector<int> gmres_history;
  bool converged = false;
};

/// z_j = c_j, a_j = (1 - r/2) l_j along each slit.
std::vector<EllipseParams> initialize(const StripSlitDomain& omega, const IterationConfig& cfg);

/// E = (1/2m) sum (|c_j^k - c_j| + |l_j^k - l_j|).
double slit_error(const StripSlitDomain& omega, const std::vector<SlitImage>& images);

/// Raised when an update produces an invalid ellipse configuration; carries
/// the error history up to that point.
class IterationAborted : public GeometryError {
public:
  IterationAborted(const std::string& what, std::vector<double> history)
      : GeometryError(what), error_history(std::move(history)) {}

  std::vector<double> error_history;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

/// Fixed-point iteration on the ellipse centers and major axes until the
/// mapped slits match the target domain. Starts from `initial` when given.
/// Non-convergence is reported through `converged`, not thrown.
PreimageResult iterate(const StripSlitDomain& omega, const IterationConfig& cfg,
                       const IterationObserver& observer = {},
                       std::optional<std::vector<EllipseParams>> initial = std::nullopt);

} // namespace stripmap
