#include "stripmap/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stripmap {

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one point per axis");
  if (!(x1 >= x0) || !(y1 >= y0)) throw std::invalid_argument("grid ranges must be ordered");
  if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1))
    throw std::invalid_argument("grid ranges must be finite");
  if (y0 < -kHalfPi || y1 > kHalfPi) throw std::invalid_argument("grid leaves the strip");
}

MapData horizontal_slit_map(const MapData& phi, const SolverOptions& opts) {
  return build_map(phi.bp, std::vector<double>(phi.bp.m + 1, 0.0), phi.alpha, opts);
}

MapData horizontal_slit_map(const PreimageResult& pre) { return horizontal_slit_map(pre.map, pre.config.solver); }

std::vector<Complex> complex_potential(const MapData& phi, const MapData& upsilon, std::span<const Complex> z) {
  const auto w = inverse_map(phi, z);
  return evaluate_map(upsilon, w);
}

std::vector<Complex> complex_potential(const PreimageResult& pre, const MapData& upsilon,
                                       std::span<const Complex> z) {
  return complex_potential(pre.map, upsilon, z);
}

std::vector<double> slit_levels(const MapData& upsilon) {
  std::vector<double> out;
  const int n = upsilon.bp.n;
  for (int j = 1; j <= upsilon.bp.m; ++j) out.push_back(upsilon.zeta.segment(j * n, n).imag().mean());
  return out;
}

FlowField stream_grid(const MapData& phi, const MapData& upsilon, const std::vector<SlitSpec>& slits,
                      const GridSpec& grid, double exclusion) {
  grid.validate();
  FlowField field;
  field.grid = grid;
  const std::size_t total = static_cast<std::size_t>(grid.nx) * grid.ny;
  field.psi.assign(total, std::numeric_limits<double>::quiet_NaN());
  field.mask.assign(total, true);
  field.slit_levels = slit_levels(upsilon);

  std::vector<Complex> pts;
  std::vector<std::size_t> where;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Complex z(grid.x(i), grid.y(j));
      if (!(kHalfPi - std::abs(z.imag()) >= 1e-13)) continue;
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& s : slits) dist = std::min(dist, point_segment_distance(z, s.a(), s.b()));
      if (dist < exclusion) continue;
      pts.push_back(z);
      where.push_back(static_cast<std::size_t>(j) * grid.nx + i);
    }
  }
  const auto pre = inverse_map_batch(phi, pts);
  const auto W = evaluate_map_batch(upsilon, pre.values);
  for (std::size_t q = 0; q < pts.size(); ++q) {
    if (!pre.ok[q] || !W.ok[q] || !std::isfinite(W.values[q].imag())) {
      ++field.failed;
      continue;
    }
    field.psi[where[q]] = W.values[q].imag();
    field.mask[where[q]] = false;
  }
  field.masked = static_cast<int>(std::count(field.mask.begin(), field.mask.end(), true));
  return field;
}

FlowField stream_grid(const PreimageResult& pre, const MapData& upsilon, const GridSpec& grid, double exclusion) {
  return stream_grid(pre.map, upsilon, pre.domain.slits(), grid, exclusion);
}

FlowDiagnostics flow_diagnostics(const MapData& phi, const MapData& upsilon, double far_x, int samples) {
  FlowDiagnostics d;
  const int n = upsilon.bp.n;
  for (int j = 1; j <= upsilon.bp.m; ++j) {
    const RVector im = upsilon.zeta.segment(j * n, n).imag();
    d.slit_constancy = std::max(d.slit_constancy, im.maxCoeff() - im.minCoeff());
  }
  for (int k = 0; k < n; ++k) {
    const Complex z = upsilon.zeta[k];
    if (!std::isfinite(z.real())) continue;
    d.wall_error = std::max(d.wall_error, std::abs(std::abs(z.imag()) - kHalfPi));
  }
  std::vector<Complex> pts;
  for (int s = 0; s < samples; ++s) {
    const double y = -1.5 + 3.0 * s / (samples - 1);
    pts.emplace_back(far_x, y);
    pts.emplace_back(-far_x, y);
  }
  const auto W = complex_potential(phi, upsilon, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) d.far_field = std::max(d.far_field, std::abs(W[i].imag() - pts[i].imag()));
  return d;
}

} // namespace stripmap
