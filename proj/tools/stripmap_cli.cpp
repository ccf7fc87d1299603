#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stripmap/capacity.hpp"
#include "stripmap/elliptic.hpp"
#include "stripmap/flow.hpp"
#include "stripmap/problem_io.hpp"

using namespace stripmap;
using nlohmann::json;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitNoConvergence = 2;

struct Common {
  std::string input;
  std::string out;
  std::optional<int> n;
  std::optional<double> r;
  std::optional<double> eps;
  std::optional<int> max_iter;
  std::string extraction;
  bool emit_config = false;
};

void add_common(CLI::App* cmd, Common& c, bool numerics = true) {
  cmd->add_option("--input,-i", c.input, "problem file (JSON)");
  cmd->add_option("--out,-o", c.out, "result file (default: stdout)");
  if (numerics) {
    cmd->add_option("--n", c.n, "nodes per boundary component (power of two)");
    cmd->add_option("--r", c.r, "ellipse aspect ratio in (0, 1]");
    cmd->add_option("--eps", c.eps, "outer iteration tolerance");
    cmd->add_option("--max-iter", c.max_iter, "maximum outer iterations");
    cmd->add_option("--extraction", c.extraction, "slit image extraction: nodes or interpolated")
        ->check(CLI::IsMember({"nodes", "interpolated"}));
  }
  cmd->add_flag("--emit-config", c.emit_config, "print the resolved problem and exit");
}

ProblemFile resolve(const Common& c, bool allow_empty) {
  ProblemFile pf;
  if (!c.input.empty())
    pf = load_problem(c.input, allow_empty);
  else if (!c.emit_config)
    throw ParseError("--input is required");
  if (c.n) pf.numerics.n = *c.n;
  if (c.r) pf.numerics.r = *c.r;
  if (c.eps) pf.numerics.eps = *c.eps;
  if (c.max_iter) pf.numerics.max_iter = *c.max_iter;
  if (!c.extraction.empty()) pf.numerics.extraction = parse_extraction(c.extraction);
  try {
    pf.numerics.to_config().validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("numerics: ") + e.what());
  }
  return pf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw ParseError("cannot write " + path);
  os << text;
}

json cjson(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return nullptr;
  return json::array({z.real(), z.imag()});
}

IterationObserver log_observer() {
  return [](const IterationRecord& rec) {
    json line = {{"k", rec.k}, {"error", rec.error}, {"gmres", rec.gmres_iterations}, {"ms", rec.elapsed_ms}};
    std::cerr << line.dump() << '\n';
  };
}

json preimage_json(const PreimageResult& pre, int samples) {
  json j;
  j["converged"] = pre.converged;
  j["n"] = pre.config.n;
  j["r"] = pre.config.r;
  j["error_history"] = pre.error_history;
  j["gmres_history"] = pre.gmres_history;
  j["ellipses"] = json::array();
  for (const auto& e : pre.params)
    j["ellipses"].push_back({{"z", cjson(e.z)}, {"a", e.a}, {"theta", e.theta}, {"r", e.r}});
  j["slit_images"] = json::array();
  for (const auto& s : pre.slit_images)
    j["slit_images"].push_back({{"center", cjson(s.center)}, {"length", s.length}, {"theta", s.theta}});
  j["alpha"] = cjson(pre.map.alpha);

  const auto& bp = pre.map.bp;
  const int stride = std::max(1, bp.n / std::max(1, samples));
  j["boundary"] = json::array();
  for (int c = 0; c <= bp.m; ++c) {
    json comp = {{"component", c}, {"t", json::array()}, {"eta", json::array()}, {"zeta", json::array()}};
    for (int i = 0; i < bp.n; i += stride) {
      const int k = c * bp.n + i;
      comp["t"].push_back(kTwoPi * i / bp.n);
      comp["eta"].push_back(cjson(bp.eta[k]));
      comp["zeta"].push_back(cjson(pre.map.zeta[k]));
    }
    j["boundary"].push_back(std::move(comp));
  }
  return j;
}

struct ExactRef {
  std::string kind;
  double s;
  double value;
};

ExactRef parse_exact(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("exact reference must be vertical:s or horizontal:s");
  ExactRef ref;
  ref.kind = spec.substr(0, colon);
  try {
    std::size_t used = 0;
    ref.s = std::stod(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ParseError("cannot read the parameter of " + spec);
  }
  try {
    if (ref.kind == "vertical")
      ref.value = exact_cap_vertical(ref.s);
    else if (ref.kind == "horizontal")
      ref.value = exact_cap_horizontal(ref.s);
    else
      throw ParseError("unknown exact family " + ref.kind);
  } catch (const std::domain_error& e) {
    throw ParseError(e.what());
  }
  return ref;
}

std::string fmt15(double x) {
  std::ostringstream os;
  os.precision(15);
  os << x;
  return os.str();
}

int run_preimage(const Common& c, int samples) {
  const ProblemFile pf = resolve(c, false);
  if (c.emit_config) {
    std::cout << emit_problem(pf) << '\n';
    return 0;
  }
  const auto pre = iterate(pf.domain(), pf.numerics.to_config(), log_observer());
  write_text(c.out, preimage_json(pre, samples).dump(2) + "\n");
  if (!pre.converged) {
    std::cerr << "preimage iteration did not converge: E = " << pre.error_history.back() << '\n';
    return kExitNoConvergence;
  }
  return 0;
}

int run_capacity(const Common& c, const std::string& exact) {
  const ProblemFile pf = resolve(c, false);
  if (c.emit_config) {
    std::cout << emit_problem(pf) << '\n';
    return 0;
  }
  std::optional<ExactRef> ref;
  if (!exact.empty()) ref = parse_exact(exact);

  const CondenserSpec spec{pf.domain(), pf.levels()};
  const auto res = capacity(spec, pf.numerics.to_config(), log_observer());

  json j;
  j["cap"] = res.cap;
  j["delta"] = spec.delta;
  j["delta_defaulted"] = !pf.delta.has_value();
  j["charges"] = std::vector<double>(res.a.data(), res.a.data() + res.a.size());
  j["converged"] = res.preimage.converged;
  j["n"] = res.n;
  j["r"] = res.r;
  j["error_history"] = res.preimage.error_history;

  std::cout << "cap " << fmt15(res.cap) << '\n';
  if (!pf.delta) std::cout << "note: delta not given, all plates at level 1\n";
  if (ref) {
    const double rel = std::abs(res.cap - ref->value) / std::abs(ref->value);
    std::cout << "exact " << ref->kind << ':' << ref->s << ' ' << fmt15(ref->value) << '\n';
    std::cout << "rel_error " << rel << '\n';
    j["exact"] = {{"kind", ref->kind}, {"s", ref->s}, {"value", ref->value}, {"rel_error", rel}};
  }
  if (!c.out.empty()) write_text(c.out, j.dump(2) + "\n");
  if (!res.preimage.converged) {
    std::cerr << "preimage iteration did not converge: E = " << res.preimage.error_history.back() << '\n';
    return kExitNoConvergence;
  }
  return 0;
}

int run_flow(const Common& c, bool check, const std::string& format) {
  const ProblemFile pf = resolve(c, true);
  if (c.emit_config) {
    ProblemFile shown = pf;
    if (!shown.flow) shown.flow = FlowConfig{};
    std::cout << emit_problem(shown) << '\n';
    return 0;
  }
  if (format != "csv" && format != "json") throw ParseError("format must be csv or json");
  const FlowConfig fc = pf.flow.value_or(FlowConfig{});
  const IterationConfig cfg = pf.numerics.to_config();

  MapData phi;
  bool converged = true;
  if (pf.slits.empty()) {
    const auto bp = build_preimage_boundary({}, cfg.n);
    phi = build_map(bp, {0.0}, default_alpha(bp), cfg.solver);
  } else {
    auto pre = iterate(pf.domain(), cfg, log_observer());
    converged = pre.converged;
    phi = std::move(pre.map);
  }
  const MapData upsilon = horizontal_slit_map(phi, cfg.solver);
  const auto field = stream_grid(phi, upsilon, pf.slits, fc.grid, fc.exclusion);

  std::ostringstream os;
  os.precision(17);
  if (format == "csv") {
    os << "x,y,psi\n";
    for (int j = 0; j < fc.grid.ny; ++j)
      for (int i = 0; i < fc.grid.nx; ++i) {
        const std::size_t idx = static_cast<std::size_t>(j) * fc.grid.nx + i;
        os << fc.grid.x(i) << ',' << fc.grid.y(j) << ',';
        if (!field.mask[idx]) os << field.psi[idx];
        os << '\n';
      }
  } else {
    json j;
    j["nx"] = fc.grid.nx;
    j["ny"] = fc.grid.ny;
    j["x"] = {fc.grid.x0, fc.grid.x1};
    j["y"] = {fc.grid.y0, fc.grid.y1};
    j["psi"] = json::array();
    for (std::size_t idx = 0; idx < field.psi.size(); ++idx)
      j["psi"].push_back(field.mask[idx] ? json(nullptr) : json(field.psi[idx]));
    j["slit_levels"] = field.slit_levels;
    j["masked"] = field.masked;
    j["failed"] = field.failed;
    os << j.dump(2) << '\n';
  }
  write_text(c.out, os.str());

  if (check) {
    std::ostream& diag = (c.out.empty() || c.out == "-") ? std::cerr : std::cout;
    const auto d = flow_diagnostics(phi, upsilon);
    diag << "slit_constancy " << d.slit_constancy << '\n';
    diag << "wall_error " << d.wall_error << '\n';
    diag << "far_field " << d.far_field << '\n';
    diag << "masked " << field.masked << " failed " << field.failed << '\n';
  }
  if (!converged) {
    std::cerr << "preimage iteration did not converge\n";
    return kExitNoConvergence;
  }
  return 0;
}

int run_exact(const std::string& spec) {
  const auto ref = parse_exact(spec);
  std::cout << fmt15(ref.value) << '\n';
  return 0;
}

int run_study(const Common& c, std::optional<std::uint64_t> seed) {
  ProblemFile pf = resolve(c, true);
  if (!pf.study) throw ParseError("problem file has no study section");
  if (seed) pf.study->seed = *seed;
  if (c.emit_config) {
    std::cout << emit_problem(pf) << '\n';
    return 0;
  }
  const auto rows = capacity_study(pf.study_family(), pf.study_size());
  write_text(c.out, study_csv(rows));
  for (const auto& r : rows)
    if (!r.error.empty()) std::cerr << "sample " << r.param << ": " << r.error << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal maps onto slit strips, condenser capacities and channel flows"};
  app.require_subcommand(1);

  Common pre_c, cap_c, flow_c, study_c;
  int samples = 64;
  std::string exact_cap, exact_arg, format = "csv";
  bool check = false;
  std::optional<std::uint64_t> seed;

  auto* pre = app.add_subcommand("preimage", "compute the preimage domain and the map onto the slit strip");
  add_common(pre, pre_c);
  pre->add_option("--samples", samples, "boundary samples per component in the output")->check(CLI::PositiveNumber);

  auto* cap = app.add_subcommand("capacity", "capacity of the condenser with the slits as plates");
  add_common(cap, cap_c);
  cap->add_option("--exact", exact_cap, "reference value: vertical:s or horizontal:s");

  auto* flow = app.add_subcommand("flow", "stream function of the channel flow past the slits");
  add_common(flow, flow_c);
  flow->add_flag("--check", check, "print boundary diagnostics");
  flow->add_option("--format", format, "csv or json");

  auto* ex = app.add_subcommand("exact", "closed-form capacity of one slit: vertical:s or horizontal:s");
  ex->add_option("spec", exact_arg)->required();

  auto* study = app.add_subcommand("study", "capacity over a family of slit configurations");
  add_common(study, study_c);
  study->add_option("--seed", seed, "seed for random families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (*pre) return run_preimage(pre_c, samples);
    if (*cap) return run_capacity(cap_c, exact_cap);
    if (*flow) return run_flow(flow_c, check, format);
    if (*ex) return run_exact(exact_arg);
    if (*study) return run_study(study_c, seed);
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
