#include "weft/problem.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "weft/errors.hpp"

namespace weft {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message, const std::string& where = {}) {
  throw ParseError(where.empty() ? message : message + " at " + where);
}

void check_fields(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail("unknown field \"" + item.key() + "\"", where);
    }
  }
}

std::size_t require_uint(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field)) fail(std::string(field) + " is required", where);
  const json& v = j.at(field);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    fail(std::string(field) + " must be a positive integer", where);
  }
  return v.get<std::size_t>();
}

Vec parse_vector(const json& j, std::size_t ambient, const std::string& where) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty number array", where);
  Vec out;
  out.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_number()) fail("expected a nonempty number array", where);
    out.push_back(entry.get<double>());
  }
  if (out.size() != ambient) fail("vector length must equal ambient_dim", where);
  return out;
}

std::vector<Vec> parse_vector_list(const json& j, std::size_t ambient,
                                   const std::string& where) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty array of vectors", where);
  std::vector<Vec> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(parse_vector(j[k], ambient, where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

void parse_family(const json& j, const char* label, std::size_t ambient,
                  WeightedFamily& family) {
  if (!j.is_array() || j.empty()) fail(std::string(label) + " must be a nonempty array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string where = std::string(label) + "[" + std::to_string(i) + "]";
    const json& entry = j[i];
    if (!entry.is_object()) fail("expected an object", where);
    check_fields(entry, {"weight", "spanning_vectors"}, where);
    if (!entry.contains("weight")) fail("weight is required", where);
    const json& wj = entry.at("weight");
    if (!wj.is_number() || !(wj.get<double>() > 0.0)) {
      fail("weight must be a positive number", where);
    }
    if (!entry.contains("spanning_vectors")) fail("spanning_vectors is required", where);
    std::vector<Vec> spanning =
        parse_vector_list(entry.at("spanning_vectors"), ambient, where + ".spanning_vectors");
    Subspace subspace = orthonormalize(ambient, spanning);
    family.add(std::move(subspace), wj.get<double>());
  }
}

std::vector<std::vector<Vec>> parse_local_side(const json& j, const char* label,
                                               std::size_t ambient, std::size_t count) {
  std::string where = std::string("local_frames.") + label;
  if (!j.is_array()) fail("expected an array of vector lists", where);
  if (j.size() != count) fail("length must match family " + std::string(label), where);
  std::vector<std::vector<Vec>> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_vector_list(j[i], ambient, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void parse_options(const json& j, WeaveOptions& options) {
  const std::string where = "options";
  if (!j.is_object()) fail("expected an object", where);
  check_fields(j, {"tol", "pattern_cap", "sample", "seed", "per_pattern", "threads"}, where);
  if (j.contains("tol")) {
    const json& v = j.at("tol");
    if (!v.is_number() || v.get<double>() < 0.0) {
      fail("tol must be a nonnegative number", where);
    }
    options.tol = v.get<double>();
  }
  if (j.contains("pattern_cap")) {
    const json& v = j.at("pattern_cap");
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 63) {
      fail("pattern_cap must be an integer between 0 and 63", where);
    }
    options.pattern_cap = v.get<std::size_t>();
  }
  if (j.contains("sample")) {
    options.sample = require_uint(j, "sample", where);
  }
  if (j.contains("seed")) {
    const json& v = j.at("seed");
    if (!v.is_number_unsigned()) fail("seed must be a nonnegative integer", where);
    options.seed = v.get<std::uint64_t>();
  }
  if (j.contains("per_pattern")) {
    const json& v = j.at("per_pattern");
    if (!v.is_boolean()) fail("per_pattern must be a boolean", where);
    options.per_pattern = v.get<bool>() ? 1 : 0;
  }
  if (j.contains("threads")) {
    const json& v = j.at("threads");
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 1024) {
      fail("threads must be an integer between 0 and 1024", where);
    }
    options.threads = v.get<unsigned>();
  }
}

}  // namespace

ProblemFile::ProblemFile(std::size_t ambient)
    : ambient_dim(ambient), v_family(ambient), w_family(ambient) {}

LocalFrameSystem ProblemFile::v_system() const {
  if (!v_local) throw InvalidInput("problem has no local_frames block");
  return {v_family, *v_local};
}

LocalFrameSystem ProblemFile::w_system() const {
  if (!w_local) throw InvalidInput("problem has no local_frames block");
  return {w_family, *w_local};
}

ProblemFile parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("problem: expected a JSON object");
  check_fields(root, {"ambient_dim", "V", "W", "local_frames", "options"}, "problem");

  std::size_t ambient = require_uint(root, "ambient_dim", "problem");
  ProblemFile problem(ambient);

  if (!root.contains("V")) fail("V is required", "problem");
  if (!root.contains("W")) fail("W is required", "problem");
  parse_family(root.at("V"), "V", ambient, problem.v_family);
  parse_family(root.at("W"), "W", ambient, problem.w_family);
  if (problem.v_family.size() != problem.w_family.size()) {
    fail("V and W must have the same length", "problem");
  }

  if (root.contains("local_frames")) {
    const json& lf = root.at("local_frames");
    if (!lf.is_object()) fail("expected an object", "local_frames");
    check_fields(lf, {"V", "W"}, "local_frames");
    if (!lf.contains("V") || !lf.contains("W")) {
      fail("local_frames requires both V and W", "local_frames");
    }
    problem.v_local = parse_local_side(lf.at("V"), "V", ambient, problem.v_family.size());
    problem.w_local = parse_local_side(lf.at("W"), "W", ambient, problem.w_family.size());
  }

  if (root.contains("options")) {
    parse_options(root.at("options"), problem.options);
  }
  return problem;
}

ProblemFile load_problem(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  return parse_problem(text);
}

}  // namespace weft
