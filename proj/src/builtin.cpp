#include "weft/builtin.hpp"

#include <charconv>

#include "weft/errors.hpp"

namespace weft {

namespace {

Vec axis(std::size_t n, std::size_t idx) {
  Vec e(n, 0.0);
  e[idx] = 1.0;
  return e;
}

Subspace span_of(std::size_t n, const std::vector<std::size_t>& axes) {
  Matrix basis(n, axes.size());
  for (std::size_t j = 0; j < axes.size(); ++j) basis(axes[j], j) = 1.0;
  return Subspace::from_basis(std::move(basis));
}

}  // namespace

BuiltinProblem::BuiltinProblem(std::string problem_name, std::size_t ambient)
    : name(std::move(problem_name)),
      ambient_dim(ambient),
      v_family(ambient),
      w_family(ambient) {}

BuiltinProblem cyclic_pair(std::size_t n) {
  if (n < 2 || n > 16) {
    throw InvalidInput("cyclic_pair: index count must be between 2 and 16");
  }
  BuiltinProblem p("example1:" + std::to_string(n), n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t next = (i + 1) % n;
    p.v_family.add(span_of(n, {i}), 1.0);
    p.w_family.add(span_of(n, {i, next}), 1.0);
    p.v_local.push_back({axis(n, i)});
    p.w_local.push_back({axis(n, i), axis(n, next)});
  }
  p.expected_lower = 1.0;
  p.expected_upper = 2.0;
  p.expected_woven = true;
  return p;
}

BuiltinProblem swap_pair() {
  const std::size_t n = 3;
  BuiltinProblem p("example2", n);
  const std::size_t v_axes[n] = {0, 1, 2};
  const std::size_t w_axes[n] = {1, 0, 2};
  for (std::size_t i = 0; i < n; ++i) {
    p.v_family.add(span_of(n, {v_axes[i]}), 1.0);
    p.w_family.add(span_of(n, {w_axes[i]}), 1.0);
    p.v_local.push_back({axis(n, v_axes[i])});
    p.w_local.push_back({axis(n, w_axes[i])});
  }
  p.expected_lower = 0.0;
  p.expected_upper = 2.0;
  p.expected_woven = false;
  p.expected_witness_bits = "010";
  return p;
}

std::optional<BuiltinProblem> builtin_by_name(std::string_view name) {
  if (name == "example2") return swap_pair();
  if (name == "example1") return cyclic_pair(4);
  constexpr std::string_view prefix = "example1:";
  if (name.substr(0, prefix.size()) == prefix) {
    std::string_view digits = name.substr(prefix.size());
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    if (n < 2 || n > 16) return std::nullopt;
    return cyclic_pair(n);
  }
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  return {"example1", "example1:<n>", "example2"};
}

}  // namespace weft
