#include "ordwb/session.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char **argv) {
  CLI::App app{"ordwb: ordinal terms, Sigma_1 grid oracle and class hierarchies"};
  std::string context_file, script_file, format = "text", cache_dir;
  int subset_cap = 4;
  std::size_t grid_cap = 400;
  std::vector<std::string> words;
  app.add_option("--context", context_file, "context file (atoms and m annotations)");
  app.add_option("--script", script_file, "script file, one command per line");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--cache-dir", cache_dir, "relation cache directory (env ORDWB_CACHE_DIR)");
  app.add_option("--subset-cap", subset_cap, "largest source subset in the fixed point")
      ->check(CLI::Range(1, 16));
  app.add_option("--grid-cap", grid_cap, "largest grid size")->check(CLI::PositiveNumber);
  app.add_option("command", words, "a single command; without one, commands are read from stdin");
  app.allow_extras(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ordwb::SessionOptions opts;
  opts.format = ordwb::parse_format(format);
  opts.subset_cap = subset_cap;
  opts.grid_cap = grid_cap;
  if (!cache_dir.empty())
    opts.cache_dir = cache_dir;
  else if (const char *env = std::getenv("ORDWB_CACHE_DIR"))
    opts.cache_dir = env;

  ordwb::Session session(opts);
  if (!context_file.empty()) {
    try {
      session.context() = ordwb::load_context(context_file);
    } catch (const ordwb::ParseError &e) {
      std::cerr << "error: " << context_file << ": " << e.what() << "\n";
      return 2;
    } catch (const std::exception &e) {
      std::cerr << "error: " << context_file << ": " << e.what() << "\n";
      return 1;
    }
  }

  if (!words.empty()) {
    if (!script_file.empty()) {
      std::cerr << "error: give either --script or a command, not both\n";
      return 2;
    }
    std::string line;
    for (const auto &w : words)
      line += (line.empty() ? "" : " ") + w;
    std::istringstream in(line);
    return session.run_script(in, std::cout, std::cerr);
  }
  if (!script_file.empty()) {
    std::ifstream in(script_file);
    if (!in) {
      std::cerr << "error: cannot read " << script_file << "\n";
      return 1;
    }
    return session.run_script(in, std::cout, std::cerr);
  }
  return session.run_script(std::cin, std::cout, std::cerr);
}
