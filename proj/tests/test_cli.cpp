#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>

#include <json.hpp>

#include "support/proc.hpp"

namespace {

const std::string kCli = WEFT_CLI_PATH;

using weft_test::RunResult;
using weft_test::run_cli;

const char* kSwapProblem = R"({
  "ambient_dim": 3,
  "V": [
    {"weight": 1.0, "spanning_vectors": [[1, 0, 0]]},
    {"weight": 1.0, "spanning_vectors": [[0, 1, 0]]},
    {"weight": 1.0, "spanning_vectors": [[0, 0, 1]]}
  ],
  "W": [
    {"weight": 1.0, "spanning_vectors": [[0, 1, 0]]},
    {"weight": 1.0, "spanning_vectors": [[1, 0, 0]]},
    {"weight": 1.0, "spanning_vectors": [[0, 0, 1]]}
  ]
})";

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/weft_cli_fixture_" + std::to_string(::getpid()) + "_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("demo subcommand runs builtins and checks expectations") {
  RunResult r1 = run_cli(kCli, {"demo", "example1"});
  CHECK(r1.exit_code == 0);
  CHECK(r1.out.find("matches_expected: true") != std::string::npos);
  CHECK(r1.out.find("woven: true") != std::string::npos);

  // The non-woven example still matches its baked-in expectations.
  RunResult r2 = run_cli(kCli, {"demo", "example2"});
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("matches_expected: true") != std::string::npos);
  CHECK(r2.out.find("woven: false") != std::string::npos);
  CHECK(r2.out.find("argmin_pattern: 010") != std::string::npos);

  RunResult r3 = run_cli(kCli, {"demo", "no-such-demo"});
  CHECK(r3.exit_code == 2);
  CHECK(r3.err.find("error:") != std::string::npos);
}

TEST_CASE("weave verdict drives the exit code") {
  RunResult woven = run_cli(kCli, {"weave", "--demo", "example1"});
  CHECK(woven.exit_code == 0);

  RunResult not_woven = run_cli(kCli, {"weave", "--demo", "example2"});
  CHECK(not_woven.exit_code == 1);
  CHECK(not_woven.out.find("argmin_pattern: 010") != std::string::npos);
}

TEST_CASE("json and text reports carry identical numbers") {
  RunResult text = run_cli(kCli, {"weave", "--demo", "example1"});
  RunResult json = run_cli(kCli, {"weave", "--demo", "example1", "--json"});
  CHECK(json.exit_code == 0);

  nlohmann::json parsed = nlohmann::json::parse(json.out);
  CHECK(parsed.at("universal_lower").get<double>() == 1.0);
  CHECK(parsed.at("universal_upper").get<double>() == 2.0);
  CHECK(parsed.at("woven").get<bool>());
  CHECK(parsed.at("command") == "weave");

  // The text report prints the very same digit strings.
  CHECK(text.out.find("universal_lower: 1\n") != std::string::npos);
  CHECK(text.out.find("universal_upper: 2\n") != std::string::npos);
}

TEST_CASE("problem files load from disk and stdin") {
  std::string path = write_temp("swap.json", kSwapProblem);

  RunResult from_file = run_cli(kCli, {"weave", path, "--json"});
  CHECK(from_file.exit_code == 1);  // not woven
  nlohmann::json parsed = nlohmann::json::parse(from_file.out);
  CHECK(parsed.at("argmin_pattern") == "010");
  CHECK(parsed.at("universal_lower").get<double>() <= 1e-12);

  RunResult from_stdin = run_cli(kCli, {"weave", "-", "--json"}, kSwapProblem);
  CHECK(from_stdin.exit_code == 1);
  CHECK(from_stdin.out == from_file.out);

  std::remove(path.c_str());
}

TEST_CASE("bounds subcommand reports both families") {
  RunResult r = run_cli(kCli, {"bounds", "--demo", "example1", "--json"});
  CHECK(r.exit_code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK(parsed.at("V").at("lower").get<double>() == 1.0);
  CHECK(parsed.at("V").at("upper").get<double>() == 1.0);
  CHECK(parsed.at("W").at("lower").get<double>() == 2.0);
  CHECK(parsed.at("W").at("upper").get<double>() == 2.0);
  CHECK(parsed.at("V").at("is_frame").get<bool>());
}

TEST_CASE("riesz subcommand reports the dimension-count witness") {
  RunResult r = run_cli(kCli, {"riesz", "--demo", "example1", "--json"});
  CHECK(r.exit_code == 1);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK_FALSE(parsed.at("is_riesz_weaving").get<bool>());
  CHECK(parsed.at("failure_witness").at("reason") == "column_count");
  CHECK(parsed.at("failure_witness").at("pattern") == "0000");
  CHECK(parsed.at("failure_witness").at("column_count").get<int>() == 8);
}

TEST_CASE("lift subcommand checks the equivalence") {
  RunResult r = run_cli(kCli, {"lift", "--demo", "example1", "--json"});
  CHECK(r.exit_code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK(parsed.at("woven_fusion").get<bool>());
  CHECK(parsed.at("woven_vectors").get<bool>());
  CHECK(parsed.at("flags_agree").get<bool>());
  CHECK(parsed.at("checks").at("sandwich_lower_ok").get<bool>());
  CHECK(parsed.at("checks").at("sandwich_upper_ok").get<bool>());

  // A problem without local frames cannot run lift.
  std::string path = write_temp("nolocal.json", kSwapProblem);
  RunResult missing = run_cli(kCli, {"lift", path});
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("local_frames") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("usage and parse failures exit with 2") {
  RunResult no_args = run_cli(kCli, {});
  CHECK(no_args.exit_code == 2);

  RunResult bad_flag = run_cli(kCli, {"weave", "--demo", "example1", "--wat"});
  CHECK(bad_flag.exit_code == 2);

  RunResult bad_json = run_cli(kCli, {"weave", "-"}, "{broken");
  CHECK(bad_json.exit_code == 2);
  CHECK(bad_json.err.find("invalid JSON") != std::string::npos);

  RunResult no_file = run_cli(kCli, {"weave", "/tmp/no-such-file-weft.json"});
  CHECK(no_file.exit_code == 2);
  CHECK(no_file.err.find("cannot open file") != std::string::npos);

  // Unweavable sizes: exhaustive enumeration over the cap.
  RunResult capped =
      run_cli(kCli, {"weave", "-", "--pattern-cap", "2"}, kSwapProblem);
  CHECK(capped.exit_code == 2);
  CHECK(capped.err.find("pattern") != std::string::npos);
}

TEST_CASE("stdout is byte-identical across thread counts") {
  for (const char* fmt : {"--json", "--per-pattern"}) {
    RunResult t1 = run_cli(kCli, {"weave", "--demo", "example1", fmt, "--threads", "1"});
    RunResult t4 = run_cli(kCli, {"weave", "--demo", "example1", fmt, "--threads", "4"});
    RunResult t0 = run_cli(kCli, {"weave", "--demo", "example1", fmt, "--threads", "0"});
    CHECK(t1.exit_code == t4.exit_code);
    CHECK(t1.out == t4.out);
    CHECK(t1.out == t0.out);
  }
}

TEST_CASE("timing goes to stderr, not stdout") {
  RunResult r = run_cli(kCli, {"weave", "--demo", "example1"});
  CHECK(r.out.find("elapsed_ms") == std::string::npos);
  CHECK(r.err.find("elapsed_ms:") != std::string::npos);
}

TEST_CASE("sampling mode runs below the cap and never certifies") {
  RunResult r = run_cli(kCli, {"weave", "--demo", "example1", "--sample", "10", "--seed",
                               "3", "--json"});
  CHECK(r.exit_code == 1);  // cannot certify from a sample
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK_FALSE(parsed.at("exhaustive").get<bool>());
  CHECK(parsed.at("patterns_examined").get<int>() == 10);
  CHECK_FALSE(parsed.at("woven").get<bool>());
}
