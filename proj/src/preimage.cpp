#include "stripmap/preimage.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace stripmap {

void IterationConfig::validate() const {
  if (!is_power_of_two(n) || n < 8) throw std::invalid_argument("n must be a power of two >= 8");
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in (0, 1]");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(solver.tol > 0.0 && solver.tol <= 1e-6)) throw std::invalid_argument("solver tol must lie in (0, 1e-6]");
  if (solver.maxit < 1) throw std::invalid_argument("solver maxit must be at least 1");
}

std::vector<EllipseParams> initialize(const StripSlitDomain& omega, const IterationConfig& cfg) {
  std::vector<EllipseParams> out;
  out.reserve(omega.slits().size());
  for (const auto& s : omega.slits()) out.push_back({s.center(), (1.0 - 0.5 * cfg.r) * s.length(), s.theta(), cfg.r});
  check_ellipses_disjoint(out);
  return out;
}

double slit_error(const StripSlitDomain& omega, const std::vector<SlitImage>& images) {
  const auto& slits = omega.slits();
  double sum = 0.0;
  for (std::size_t j = 0; j < slits.size(); ++j)
    sum += std::abs(images[j].center - slits[j].center()) + std::abs(images[j].length - slits[j].length());
  return sum / (2.0 * static_cast<double>(slits.size()));
}

PreimageResult iterate(const StripSlitDomain& omega, const IterationConfig& cfg, const IterationObserver& observer,
                       std::optional<std::vector<EllipseParams>> initial) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto& slits = omega.slits();
  const int m = omega.size();

  std::vector<double> theta(m + 1, 0.0);
  for (int j = 0; j < m; ++j) theta[j + 1] = slits[j].theta();

  std::vector<EllipseParams> params = initial ? std::move(*initial) : initialize(omega, cfg);
  if (static_cast<int>(params.size()) != m) throw std::invalid_argument("initial ellipse count does not match the domain");

  std::vector<double> errors;
  std::vector<int> gmres_iters;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const auto start = clock::now();
    BoundaryParametrization bp;
    try {
      bp = build_preimage_boundary(params, cfg.n);
    } catch (const GeometryError& e) {
      std::ostringstream os;
      os << "iteration " << k << ": " << e.what();
      throw IterationAborted(os.str(), errors);
    }
    MapData md = build_map(bp, theta, default_alpha(bp), cfg.solver);
    auto images = extract_slit_images(md, cfg.extraction);
    const double err = slit_error(omega, images);
    errors.push_back(err);
    gmres_iters.push_back(md.bie.stats.iterations);
    if (observer) {
      const double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
      observer({k, err, md.bie.stats.iterations, ms});
    }

    if (err < cfg.eps || k == cfg.max_iter) {
      return PreimageResult{omega,           cfg,        std::move(params), std::move(md), std::move(images),
                            std::move(errors), std::move(gmres_iters), err < cfg.eps};
    }
    for (int j = 0; j < m; ++j) {
      params[j].z -= images[j].center - slits[j].center();
      params[j].a -= (1.0 - 0.5 * cfg.r) * (images[j].length - slits[j].length());
    }
  }
  throw std::logic_error("unreachable");
}

} // namespace stripmap
