#ifndef TESTS_CLI_RUNNER_HPP
#define TESTS_CLI_RUNNER_HPP

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace cli_runner {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

inline std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

inline RunResult run(const std::string& binary,
                     const std::vector<std::string>& args,
                     bool silence_stderr = true) {
  std::string cmd = quote(binary);
  for (const std::string& a : args) cmd += " " + quote(a);
  if (silence_stderr) cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  if (status == -1) throw std::runtime_error("pclose failed for: " + cmd);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace cli_runner

#endif  // TESTS_CLI_RUNNER_HPP
