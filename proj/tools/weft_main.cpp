#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weft/builtin.hpp"
#include "weft/errors.hpp"
#include "weft/problem.hpp"
#include "weft/report.hpp"

namespace {

using namespace weft;

struct CmdArgs {
  std::string problem;  // file path, or "-" for stdin
  std::string demo;     // builtin problem name
  bool json = false;
  double tol = -1.0;
  std::size_t pattern_cap = 20;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  CLI::Option* tol_opt = nullptr;
  CLI::Option* cap_opt = nullptr;
  CLI::Option* sample_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* per_pattern_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_problem_source(CLI::App* cmd, CmdArgs& args) {
  cmd->add_option("problem", args.problem, "problem file path, or - for stdin");
  cmd->add_option("--demo", args.demo, "use a builtin problem instead of a file");
  cmd->add_flag("--json", args.json, "emit the report as JSON");
}

void add_weave_flags(CLI::App* cmd, CmdArgs& args) {
  args.tol_opt = cmd->add_option("--tol", args.tol, "lower-bound threshold for the verdict");
  args.cap_opt = cmd->add_option("--pattern-cap", args.pattern_cap,
                                 "largest index count enumerated exhaustively");
  args.sample_opt =
      cmd->add_option("--sample", args.sample, "examine this many random patterns instead");
  args.seed_opt = cmd->add_option("--seed", args.seed, "seed for pattern sampling");
  args.per_pattern_opt =
      cmd->add_flag("--per-pattern", "include the per-pattern bounds table");
  args.threads_opt = cmd->add_option("--threads", args.threads,
                                     "worker threads for the pattern sweep (0 = hardware)");
}

struct Loaded {
  std::size_t ambient;
  WeightedFamily v;
  WeightedFamily w;
  std::optional<std::vector<std::vector<Vec>>> v_local;
  std::optional<std::vector<std::vector<Vec>>> w_local;
  WeaveOptions options;
};

Loaded load(const CmdArgs& args) {
  if (!args.demo.empty() && !args.problem.empty()) {
    throw InvalidInput("give either a problem file or --demo, not both");
  }
  if (!args.demo.empty()) {
    std::optional<BuiltinProblem> bp = builtin_by_name(args.demo);
    if (!bp) throw InvalidInput("unknown demo problem: " + args.demo);
    return {bp->ambient_dim, bp->v_family,        bp->w_family,
            bp->v_local,     bp->w_local,         WeaveOptions{}};
  }
  if (args.problem.empty()) {
    throw InvalidInput("a problem file (or --demo) is required");
  }
  ProblemFile pf = load_problem(args.problem);
  return {pf.ambient_dim, pf.v_family, pf.w_family, pf.v_local, pf.w_local, pf.options};
}

// Command-line flags override whatever the problem file's options block set.
void apply_overrides(Loaded& loaded, const CmdArgs& args) {
  WeaveOptions& o = loaded.options;
  if (args.tol_opt && args.tol_opt->count() > 0) o.tol = args.tol;
  if (args.cap_opt && args.cap_opt->count() > 0) o.pattern_cap = args.pattern_cap;
  if (args.sample_opt && args.sample_opt->count() > 0) o.sample = args.sample;
  if (args.seed_opt && args.seed_opt->count() > 0) o.seed = args.seed;
  if (args.per_pattern_opt && args.per_pattern_opt->count() > 0) o.per_pattern = 1;
  if (args.threads_opt && args.threads_opt->count() > 0) o.threads = args.threads;
}

void emit(const Report& report, bool json) {
  std::cout << (json ? report.to_json() : report.to_text());
}

int run_bounds(const CmdArgs& args) {
  Loaded loaded = load(args);
  emit(build_bounds_report(loaded.v, loaded.w), args.json);
  bool ok = fusion_bounds(loaded.v).is_frame && fusion_bounds(loaded.w).is_frame;
  return ok ? 0 : 1;
}

int run_weave(const CmdArgs& args) {
  Loaded loaded = load(args);
  apply_overrides(loaded, args);
  auto [woven, report] = is_woven(loaded.v, loaded.w, -1.0, loaded.options);
  emit(build_weave_report(loaded.v, loaded.w, report), args.json);
  return woven ? 0 : 1;
}

int run_riesz(const CmdArgs& args) {
  Loaded loaded = load(args);
  apply_overrides(loaded, args);
  auto [ok, report] = is_woven_riesz(loaded.v, loaded.w, -1.0, loaded.options);
  emit(build_riesz_report(loaded.v, loaded.w, report), args.json);
  return ok ? 0 : 1;
}

int run_lift(const CmdArgs& args) {
  Loaded loaded = load(args);
  apply_overrides(loaded, args);
  if (!loaded.v_local || !loaded.w_local) {
    throw InvalidInput("lift requires a local_frames block (or a demo that provides one)");
  }
  LocalFrameSystem v_system(loaded.v, *loaded.v_local);
  LocalFrameSystem w_system(loaded.w, *loaded.w_local);
  EquivalenceReport report = equivalence_check(v_system, w_system, -1.0, loaded.options);
  emit(build_lift_report(loaded.ambient, report), args.json);
  bool ok = report.flags_agree && report.sandwich_lower_ok && report.sandwich_upper_ok;
  return ok ? 0 : 1;
}

int run_demo(const CmdArgs& args) {
  std::optional<BuiltinProblem> bp = builtin_by_name(args.demo);
  if (!bp) throw InvalidInput("unknown demo problem: " + args.demo);
  WeaveOptions options;
  if (args.threads_opt && args.threads_opt->count() > 0) options.threads = args.threads;
  DemoOutcome outcome = evaluate_demo(*bp, options);
  emit(build_demo_report(*bp, outcome), args.json);
  return outcome.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusion frame weaving toolkit"};
  app.require_subcommand(1);

  CmdArgs bounds_args, weave_args, riesz_args, lift_args, demo_args;

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "optimal fusion frame bounds of both families");
  add_problem_source(bounds_cmd, bounds_args);

  CLI::App* weave_cmd =
      app.add_subcommand("weave", "universal weaving bounds and the weaving verdict");
  add_problem_source(weave_cmd, weave_args);
  add_weave_flags(weave_cmd, weave_args);

  CLI::App* riesz_cmd =
      app.add_subcommand("riesz", "Riesz weaving verdict over all patterns");
  add_problem_source(riesz_cmd, riesz_args);
  add_weave_flags(riesz_cmd, riesz_args);

  CLI::App* lift_cmd = app.add_subcommand(
      "lift", "equivalence of subspace-level and lifted vector-level weaving");
  add_problem_source(lift_cmd, lift_args);
  add_weave_flags(lift_cmd, lift_args);

  CLI::App* demo_cmd = app.add_subcommand("demo", "run a builtin problem and check it");
  demo_cmd->add_option("name", demo_args.demo, "builtin problem name")->required();
  demo_cmd->add_flag("--json", demo_args.json, "emit the report as JSON");
  demo_args.threads_opt = demo_cmd->add_option(
      "--threads", demo_args.threads, "worker threads for the pattern sweep (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (bounds_cmd->parsed()) {
      code = run_bounds(bounds_args);
    } else if (weave_cmd->parsed()) {
      code = run_weave(weave_args);
    } else if (riesz_cmd->parsed()) {
      code = run_riesz(riesz_args);
    } else if (lift_cmd->parsed()) {
      code = run_lift(lift_args);
    } else if (demo_cmd->parsed()) {
      code = run_demo(demo_args);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const PatternCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 3;
  }

  auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started);
  std::fprintf(stderr, "elapsed_ms: %.3f\n", elapsed.count());
  return code;
}
