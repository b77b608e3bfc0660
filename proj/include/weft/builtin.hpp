#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weft/frames.hpp"

namespace weft {

/// A named demo problem with the values a run is expected to reproduce.
struct BuiltinProblem {
  BuiltinProblem(std::string problem_name, std::size_t ambient);

  std::string name;
  std::size_t ambient_dim = 0;
  WeightedFamily v_family;
  WeightedFamily w_family;
  std::vector<std::vector<Vec>> v_local;  // orthonormal spanning system per subspace
  std::vector<std::vector<Vec>> w_local;

  double expected_lower = 0.0;
  double expected_upper = 0.0;
  bool expected_woven = false;
  std::string expected_witness_bits;  // empty: no witness expectation
};

/// V_i = span{e_i}, W_i = span{e_i, e_{i+1 mod n}}, unit weights. Woven with
/// universal bounds (1, 2). Requires 2 ≤ n ≤ 16.
BuiltinProblem cyclic_pair(std::size_t n);

/// In R^3: V = coordinate lines, W = the same lines with the first two
/// swapped. Both are Parseval fusion frames but the pair is not woven; the
/// first failing pattern draws only index 1 from V.
BuiltinProblem swap_pair();

/// Accepts "example1", "example1:n" and "example2".
std::optional<BuiltinProblem> builtin_by_name(std::string_view name);

std::vector<std::string> builtin_names();

}  // namespace weft
