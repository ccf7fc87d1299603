#pragma once

#include <span>
#include <vector>

#include "stripmap/preimage.hpp"

namespace stripmap {

/// Uniform grid [x0, x1] x [y0, y1] with nx * ny points, endpoints included.
struct GridSpec {
  double x0 = -3.0, x1 = 3.0;
  double y0 = -1.5, y1 = 1.5;
  int nx = 61, ny = 31;

  void validate() const;
  double x(int i) const { return nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1); }
  double y(int j) const { return ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1); }
};

inline constexpr double kDefaultExclusion = 0.02;

/// Stream function Im W on a grid; index (j, i) -> j * nx + i. Masked
/// entries hold NaN.
struct FlowField {
  GridSpec grid;
  std::vector<double> psi;
  std::vector<bool> mask; // true where psi is undefined
  std::vector<double> slit_levels;
  int masked = 0;
  int failed = 0; // masked because evaluation rejected the point
};

/// Phi for the slit strip with all angles zero, built on the same preimage
/// domain and base point as `phi`.
MapData horizontal_slit_map(const MapData& phi, const SolverOptions& opts = {});
MapData horizontal_slit_map(const PreimageResult& pre);

/// W(z) = Upsilon(Phi^{-1}(z)).
std::vector<Complex> complex_potential(const MapData& phi, const MapData& upsilon, std::span<const Complex> z);
std::vector<Complex> complex_potential(const PreimageResult& pre, const MapData& upsilon,
                                       std::span<const Complex> z);

/// Per-obstacle stream value: mean of Im Upsilon over each inner boundary image.
std::vector<double> slit_levels(const MapData& upsilon);

FlowField stream_grid(const MapData& phi, const MapData& upsilon, const std::vector<SlitSpec>& slits,
                      const GridSpec& grid, double exclusion = kDefaultExclusion);
FlowField stream_grid(const PreimageResult& pre, const MapData& upsilon, const GridSpec& grid,
                      double exclusion = kDefaultExclusion);

struct FlowDiagnostics {
  double slit_constancy = 0.0; // max over obstacles of (max - min) Im Upsilon
  double wall_error = 0.0;     // max | |Im Upsilon| - pi/2 | on the outer circle
  double far_field = 0.0;      // max |Im W - y| at x = +-far_x
};

FlowDiagnostics flow_diagnostics(const MapData& phi, const MapData& upsilon, double far_x = 6.0, int samples = 21);

} // namespace stripmap
