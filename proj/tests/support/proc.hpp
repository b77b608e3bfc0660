#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace weft_test {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  q += "'";
  return q;
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Runs the toolkit binary with the given arguments, feeding `stdin_data`,
/// and captures exit code, stdout and stderr.
inline RunResult run_cli(const std::string& binary, const std::vector<std::string>& args,
                         const std::string& stdin_data = {}) {
  static int counter = 0;
  std::string base = "/tmp/weft_run_" + std::to_string(::getpid()) + "_" +
                     std::to_string(counter++);
  std::string in_path = base + ".in";
  std::string out_path = base + ".out";
  std::string err_path = base + ".err";
  {
    std::ofstream f(in_path, std::ios::binary);
    f << stdin_data;
  }
  std::string cmd = shell_quote(binary);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " < " + shell_quote(in_path) + " > " + shell_quote(out_path) + " 2> " +
         shell_quote(err_path);

  int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp_file(out_path);
  r.err = slurp_file(err_path);
  std::remove(in_path.c_str());
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace weft_test
