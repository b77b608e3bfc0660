#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weft/lifting.hpp"

namespace weft {

/// A parsed problem: two weighted subspace families over one index set,
/// optional local spanning systems, and run options.
struct ProblemFile {
  explicit ProblemFile(std::size_t ambient);

  std::size_t ambient_dim = 0;
  WeightedFamily v_family;
  WeightedFamily w_family;
  std::optional<std::vector<std::vector<Vec>>> v_local;
  std::optional<std::vector<std::vector<Vec>>> w_local;
  WeaveOptions options;

  bool has_local_frames() const { return v_local.has_value(); }
  LocalFrameSystem v_system() const;
  LocalFrameSystem w_system() const;
};

/// Parses the JSON problem format. Unknown fields are rejected; errors name
/// the offending field, e.g. "weight must be a positive number at W[3]".
///
/// {
///   "ambient_dim": 3,
///   "V": [{"weight": 1.0, "spanning_vectors": [[1,0,0]]}, ...],
///   "W": [{"weight": 1.0, "spanning_vectors": [[0,1,0]]}, ...],
///   "local_frames": {"V": [[[1,0,0]], ...], "W": [[[0,1,0]], ...]},
///   "options": {"tol": 1e-8, "pattern_cap": 20, "sample": 1000,
///               "seed": 7, "per_pattern": true, "threads": 4}
/// }
ProblemFile parse_problem(std::string_view text);

/// parse_problem over a file's contents; "-" reads standard input.
ProblemFile load_problem(const std::string& path);

}  // namespace weft
