#pragma once
// Runs the ordwb binary named by $ORDWB_BIN through the shell.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace cli {

namespace fs = std::filesystem;

struct Run {
  int rc = -1;
  std::string out, err;
};

inline std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("ordwb_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::string quote(const std::string &s) {
  std::string q = "'";
  for (char c : s)
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline bool available() { return std::getenv("ORDWB_BIN") != nullptr; }

// args are passed verbatim to the shell, so quote terms with quote()
inline Run run(const std::string &args, const std::string &input = "",
               const std::string &env = "") {
  auto d = scratch();
  {
    std::ofstream in(d / "stdin", std::ios::binary);
    in << input;
  }
  std::string cmd = env + (env.empty() ? "" : " ") + quote(std::getenv("ORDWB_BIN")) + " " +
                    args + " < " + quote((d / "stdin").string()) + " > " +
                    quote((d / "stdout").string()) + " 2> " + quote((d / "stderr").string());
  int st = std::system(cmd.c_str());
  Run r;
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(d / "stdout");
  r.err = slurp(d / "stderr");
  return r;
}

} // namespace cli
