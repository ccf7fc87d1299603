#include "stripmap/capacity.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace stripmap {

CondenserSpec CondenserSpec::classical(StripSlitDomain domain) {
  std::vector<double> delta(domain.slits().size(), 1.0);
  return {std::move(domain), std::move(delta)};
}

void CondenserSpec::validate() const {
  if (static_cast<int>(delta.size()) != domain.size())
    throw std::invalid_argument("delta needs one level per plate");
  for (double d : delta)
    if (!std::isfinite(d)) throw std::invalid_argument("delta levels must be finite");
}

CapacityResult capacity_on_preimage(PreimageResult preimage, const std::vector<double>& delta,
                                    const SolverOptions& opts) {
  const auto& bp = preimage.map.bp;
  const int m = bp.m;
  if (static_cast<int>(delta.size()) != m) throw std::invalid_argument("delta needs one level per plate");

  // Uniform angle: Re[A f] must be the real part of one analytic function on every component.
  const std::vector<double> theta(m + 1, 0.0);
  const KernelSet ks = build_kernels(bp, theta, preimage.map.alpha);

  RMatrix H(m + 1, m);
  double spread = 0.0;
  for (int k = 0; k < m; ++k) {
    const Complex alpha_k = psi_inv(preimage.params[k].z);
    RVector gamma(bp.size());
    for (int i = 0; i < bp.size(); ++i) gamma[i] = std::log(std::abs(bp.eta[i] - alpha_k));
    const auto sol = solve_bie(ks, gamma, opts);
    H.col(k) = sol.h.h;
    spread = std::max(spread, sol.h.spread.maxCoeff());
  }

  RMatrix sys(m + 1, m + 1);
  sys.leftCols(m) = H;
  sys.col(m).setOnes();
  RVector rhs = RVector::Ones(m + 1);
  rhs[0] = 0.0;

  Eigen::FullPivLU<RMatrix> lu(sys);
  if (!lu.isInvertible()) throw GeometryError("charge system is singular");
  const RVector sol = lu.solve(rhs);

  double cap = 0.0;
  for (int k = 0; k < m; ++k) cap += delta[k] * sol[k];
  cap *= kTwoPi;

  const int n = preimage.config.n;
  const double r = preimage.config.r;
  return CapacityResult{cap, sol.head(m), sol[m], std::move(H), spread, std::move(preimage), n, r};
}

CapacityResult capacity(const CondenserSpec& spec, const IterationConfig& cfg, const IterationObserver& observer) {
  spec.validate();
  auto pre = iterate(spec.domain, cfg, observer);
  return capacity_on_preimage(std::move(pre), spec.delta, cfg.solver);
}

std::vector<StudyRow> capacity_study(const StudyFamily& family, std::size_t samples) {
  std::vector<StudyRow> rows;
  rows.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    StudyRow row;
    row.param = std::to_string(i);
    try {
      const auto s = family(i);
      row.param = s.label;
      const auto res = capacity(s.spec, s.cfg);
      row.cap = res.cap;
      row.converged = res.preimage.converged;
      row.iters = static_cast<int>(res.preimage.error_history.size());
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string study_csv(const std::vector<StudyRow>& rows) {
  std::ostringstream os;
  os.precision(16);
  os << "param,cap,converged,iters\n";
  for (const auto& r : rows) {
    os << r.param << ',';
    if (r.error.empty()) os << r.cap;
    os << ',' << (r.converged ? "true" : "false") << ',' << r.iters << '\n';
  }
  return os.str();
}

namespace {

std::string label_of(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

SlitSpec shifted(const SlitSpec& s, Complex d) { return SlitSpec(s.a() + d, s.b() + d); }

} // namespace

StudyFamily symmetric_pair_family(SlitSpec J, Complex direction, std::vector<double> params, IterationConfig cfg,
                                  double r_fraction) {
  return [=](std::size_t i) {
    const double x = params.at(i);
    IterationConfig c = cfg;
    if (r_fraction > 0.0) c.r = std::min(cfg.r, r_fraction * x);
    StripSlitDomain dom({shifted(J, -x * direction), shifted(J, x * direction)});
    return StudySample{label_of(x), CondenserSpec::classical(std::move(dom)), c};
  };
}

StudyFamily translated_family(std::vector<SlitSpec> base, Complex direction, std::vector<double> params,
                              IterationConfig cfg) {
  return [=](std::size_t i) {
    const double s = params.at(i);
    std::vector<SlitSpec> slits;
    for (const auto& b : base) slits.push_back(shifted(b, s * direction));
    return StudySample{label_of(s), CondenserSpec::classical(StripSlitDomain(std::move(slits))), cfg};
  };
}

StudyFamily endpoint_grid_family(Complex anchor, std::vector<double> xs, std::vector<double> ys, IterationConfig cfg) {
  return [=](std::size_t i) {
    const double x = xs.at(i % xs.size());
    const double y = ys.at(i / xs.size());
    std::vector<SlitSpec> slits{SlitSpec(anchor, Complex(x, y))};
    return StudySample{label_of(x) + ";" + label_of(y), CondenserSpec::classical(StripSlitDomain(std::move(slits))),
                       cfg};
  };
}

StudyFamily random_intervals_family(int m, bool in_box, std::uint64_t seed, IterationConfig cfg) {
  return [=](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    const double len = 2.0 / m;
    std::uniform_real_distribution<double> ux(-4.0 + 0.5 * len, 4.0 - 0.5 * len);
    std::uniform_real_distribution<double> uy(-1.0, 1.0);
    std::vector<SlitSpec> slits;
    int attempts = 0;
    while (static_cast<int>(slits.size()) < m) {
      if (++attempts > 100000) throw GeometryError("random placement did not find room for all intervals");
      const Complex c(ux(rng), in_box ? uy(rng) : 0.0);
      SlitSpec cand(c - 0.5 * len, c + 0.5 * len);
      bool ok = true;
      for (const auto& s : slits)
        if (segment_distance(s.a(), s.b(), cand.a(), cand.b()) < 1e-3) {
          ok = false;
          break;
        }
      if (ok) slits.push_back(cand);
    }
    return StudySample{std::to_string(i), CondenserSpec::classical(StripSlitDomain(std::move(slits))), cfg};
  };
}

} // namespace stripmap
