#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stripmap/capacity.hpp"
#include "stripmap/flow.hpp"

namespace stripmap {

struct Numerics {
  int n = 1024;
  double r = 0.2;
  double eps = 1e-14;
  int max_iter = 100;
  double solver_tol = 1e-14;
  int solver_maxit = 100;
  SlitExtraction extraction = SlitExtraction::Nodes;

  IterationConfig to_config() const;
};

struct StudyConfig {
  std::string family; // pair | translate | endpoint_grid | random
  std::vector<double> values;
  std::optional<SlitSpec> segment;
  Complex direction{1.0, 0.0};
  double r_fraction = 0.0;
  Complex anchor{0.0, 0.0};
  std::vector<double> xs, ys;
  int m = 10;
  bool in_box = false;
  int samples = 10;
  std::uint64_t seed = 1;
};

struct FlowConfig {
  GridSpec grid;
  double exclusion = kDefaultExclusion;
};

/// Problem file: {"slits": [{"a": [re, im], "b": [re, im]}, ...], "delta": [...],
/// "numerics": {...}, "study": {...}, "flow": {...}}.
struct ProblemFile {
  std::vector<SlitSpec> slits;
  std::optional<std::vector<double>> delta;
  Numerics numerics;
  std::optional<StudyConfig> study;
  std::optional<FlowConfig> flow;

  StripSlitDomain domain() const { return StripSlitDomain(slits); }
  /// delta or all ones.
  std::vector<double> levels() const;
  StudyFamily study_family() const;
  std::size_t study_size() const;
};

/// Throws ParseError on malformed JSON or schema violations, GeometryError on
/// invalid slits. An empty slit list is rejected unless allow_empty is set.
ProblemFile parse_problem(std::string_view text, bool allow_empty = false);
ProblemFile load_problem(const std::string& path, bool allow_empty = false);

SlitExtraction parse_extraction(const std::string& name);

/// Fully resolved problem as JSON text (defaults made explicit).
std::string emit_problem(const ProblemFile& pf, int indent = 2);

} // namespace stripmap
