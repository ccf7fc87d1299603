#include "stripmap/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stripmap {

using nlohmann::json;

IterationConfig Numerics::to_config() const {
  IterationConfig cfg;
  cfg.n = n;
  cfg.r = r;
  cfg.eps = eps;
  cfg.max_iter = max_iter;
  cfg.solver.tol = solver_tol;
  cfg.solver.maxit = solver_maxit;
  cfg.extraction = extraction;
  return cfg;
}

std::vector<double> ProblemFile::levels() const {
  return delta ? *delta : std::vector<double>(slits.size(), 1.0);
}

namespace {

Complex to_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(what) + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json from_complex(Complex z) { return json::array({z.real(), z.imag()}); }

SlitSpec to_slit(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw ParseError("slit needs endpoints \"a\" and \"b\"");
  return SlitSpec(to_complex(j["a"], "slit endpoint"), to_complex(j["b"], "slit endpoint"));
}

json from_slit(const SlitSpec& s) { return {{"a", from_complex(s.a())}, {"b", from_complex(s.b())}}; }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field \"") + key + "\" has the wrong type");
  }
}

std::vector<double> number_list(const json& obj, const char* list_key, const char* range_key) {
  if (obj.contains(list_key)) return get_or<std::vector<double>>(obj, list_key, {});
  if (obj.contains(range_key)) {
    const auto r = get_or<std::vector<double>>(obj, range_key, {});
    if (r.size() != 3 || r[2] < 1) throw ParseError(std::string(range_key) + " must be [start, stop, count]");
    const int count = static_cast<int>(r[2]);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = count == 1 ? r[0] : r[0] + (r[1] - r[0]) * i / (count - 1);
    return out;
  }
  return {};
}

StudyConfig parse_study(const json& j) {
  if (!j.is_object()) throw ParseError("study must be an object");
  StudyConfig s;
  s.family = get_or<std::string>(j, "family", "");
  if (s.family != "pair" && s.family != "translate" && s.family != "endpoint_grid" && s.family != "random")
    throw ParseError("study family must be one of pair, translate, endpoint_grid, random");
  s.values = number_list(j, "values", "range");
  if (j.contains("segment")) s.segment = to_slit(j["segment"]);
  if (j.contains("direction")) s.direction = to_complex(j["direction"], "study direction");
  s.r_fraction = get_or<double>(j, "r_fraction", 0.0);
  if (j.contains("anchor")) s.anchor = to_complex(j["anchor"], "study anchor");
  s.xs = number_list(j, "xs", "x_range");
  s.ys = number_list(j, "ys", "y_range");
  s.m = get_or<int>(j, "m", 10);
  s.in_box = get_or<bool>(j, "in_box", false);
  s.samples = get_or<int>(j, "samples", 10);
  s.seed = get_or<std::uint64_t>(j, "seed", 1);
  if (s.family == "pair" && !s.segment) throw ParseError("pair study needs a segment");
  if ((s.family == "pair" || s.family == "translate") && s.values.empty())
    throw ParseError("study needs parameter values");
  if (s.family == "endpoint_grid" && (s.xs.empty() || s.ys.empty())) throw ParseError("endpoint_grid needs xs and ys");
  if (s.family == "random" && (s.m < 1 || s.samples < 1)) throw ParseError("random study needs m >= 1 and samples >= 1");
  return s;
}

json emit_study(const StudyConfig& s) {
  json j = {{"family", s.family},
            {"values", s.values},
            {"direction", from_complex(s.direction)},
            {"r_fraction", s.r_fraction},
            {"anchor", from_complex(s.anchor)},
            {"xs", s.xs},
            {"ys", s.ys},
            {"m", s.m},
            {"in_box", s.in_box},
            {"samples", s.samples},
            {"seed", s.seed}};
  if (s.segment) j["segment"] = from_slit(*s.segment);
  return j;
}

FlowConfig parse_flow(const json& j) {
  if (!j.is_object()) throw ParseError("flow must be an object");
  FlowConfig f;
  if (j.contains("x")) {
    const auto x = get_or<std::vector<double>>(j, "x", {});
    if (x.size() != 2) throw ParseError("flow x must be [x0, x1]");
    f.grid.x0 = x[0];
    f.grid.x1 = x[1];
  }
  if (j.contains("y")) {
    const auto y = get_or<std::vector<double>>(j, "y", {});
    if (y.size() != 2) throw ParseError("flow y must be [y0, y1]");
    f.grid.y0 = y[0];
    f.grid.y1 = y[1];
  }
  f.grid.nx = get_or<int>(j, "nx", f.grid.nx);
  f.grid.ny = get_or<int>(j, "ny", f.grid.ny);
  f.exclusion = get_or<double>(j, "exclusion", f.exclusion);
  try {
    f.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("flow grid: ") + e.what());
  }
  if (!(f.exclusion >= 0.0)) throw ParseError("flow exclusion must be non-negative");
  return f;
}

json emit_flow(const FlowConfig& f) {
  return {{"x", {f.grid.x0, f.grid.x1}},
          {"y", {f.grid.y0, f.grid.y1}},
          {"nx", f.grid.nx},
          {"ny", f.grid.ny},
          {"exclusion", f.exclusion}};
}

} // namespace

SlitExtraction parse_extraction(const std::string& name) {
  if (name == "nodes") return SlitExtraction::Nodes;
  if (name == "interpolated") return SlitExtraction::Interpolated;
  throw ParseError("extraction must be nodes or interpolated");
}

ProblemFile parse_problem(std::string_view text, bool allow_empty) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  if (!j.contains("slits") || !j["slits"].is_array()) throw ParseError("problem file needs a \"slits\" array");

  ProblemFile pf;
  for (const auto& s : j["slits"]) pf.slits.push_back(to_slit(s));
  if (pf.slits.empty() && !allow_empty) throw ParseError("slit list is empty");
  if (!pf.slits.empty()) StripSlitDomain check(pf.slits);

  if (j.contains("delta")) {
    pf.delta = get_or<std::vector<double>>(j, "delta", {});
    if (pf.delta->size() != pf.slits.size()) throw ParseError("delta needs one level per slit");
  }
  if (j.contains("numerics")) {
    const auto& nj = j["numerics"];
    if (!nj.is_object()) throw ParseError("numerics must be an object");
    Numerics& nu = pf.numerics;
    nu.n = get_or<int>(nj, "n", nu.n);
    nu.r = get_or<double>(nj, "r", nu.r);
    nu.eps = get_or<double>(nj, "eps", nu.eps);
    nu.max_iter = get_or<int>(nj, "max_iter", nu.max_iter);
    nu.solver_tol = get_or<double>(nj, "solver_tol", nu.solver_tol);
    nu.solver_maxit = get_or<int>(nj, "solver_maxit", nu.solver_maxit);
    if (nj.contains("extraction")) nu.extraction = parse_extraction(get_or<std::string>(nj, "extraction", ""));
    try {
      nu.to_config().validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("numerics: ") + e.what());
    }
  }
  if (j.contains("study")) pf.study = parse_study(j["study"]);
  if (j.contains("flow")) pf.flow = parse_flow(j["flow"]);
  return pf;
}

ProblemFile load_problem(const std::string& path, bool allow_empty) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), allow_empty);
}

std::string emit_problem(const ProblemFile& pf, int indent) {
  json j;
  j["slits"] = json::array();
  for (const auto& s : pf.slits) j["slits"].push_back(from_slit(s));
  j["delta"] = pf.levels();
  const auto& nu = pf.numerics;
  j["numerics"] = {{"n", nu.n},     {"r", nu.r},
                   {"eps", nu.eps}, {"max_iter", nu.max_iter},
                   {"solver_tol", nu.solver_tol}, {"solver_maxit", nu.solver_maxit},
                   {"extraction", nu.extraction == SlitExtraction::Nodes ? "nodes" : "interpolated"}};
  if (pf.study) j["study"] = emit_study(*pf.study);
  if (pf.flow) j["flow"] = emit_flow(*pf.flow);
  return j.dump(indent);
}

StudyFamily ProblemFile::study_family() const {
  if (!study) throw ParseError("problem file has no study section");
  const auto& s = *study;
  const IterationConfig cfg = numerics.to_config();
  if (s.family == "pair") return symmetric_pair_family(*s.segment, s.direction, s.values, cfg, s.r_fraction);
  if (s.family == "translate") {
    if (slits.empty()) throw ParseError("translate study needs base slits");
    return translated_family(slits, s.direction, s.values, cfg);
  }
  if (s.family == "endpoint_grid") return endpoint_grid_family(s.anchor, s.xs, s.ys, cfg);
  return random_intervals_family(s.m, s.in_box, s.seed, cfg);
}

std::size_t ProblemFile::study_size() const {
  if (!study) return 0;
  const auto& s = *study;
  if (s.family == "endpoint_grid") return s.xs.size() * s.ys.size();
  if (s.family == "random") return static_cast<std::size_t>(s.samples);
  return s.values.size();
}

} // namespace stripmap
