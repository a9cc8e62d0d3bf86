#pragma once

#include "ordwb/hierarchy.hpp"

#include <iosfwd>

namespace ordwb {

enum class Format { Text, Json, Dot };
Format parse_format(const std::string &s);

struct SessionOptions {
  Format format = Format::Text;
  std::string cache_dir; // empty: no relation cache
  int subset_cap = 4;
  std::size_t grid_cap = 400;
};

// A parse error inside a command, with the column of the offending character.
struct CommandParseError : ParseError {
  CommandParseError(const std::string &msg, std::size_t col) : ParseError(msg, col) {}
};

class Session {
public:
  explicit Session(SessionOptions opts = {}) : opts_(std::move(opts)) {}

  ClassContext &context() { return ctx_; }
  const SessionOptions &options() const { return opts_; }
  std::shared_ptr<const Leq1Relation> grid(const std::string &name) const;

  // One command line; returns what it prints (no trailing newline).
  std::string run_command(const std::string &line);

  // Runs a script, one command per line, '#' starts a comment. Stops at the
  // first error and returns the exit code: 0 ok, 1 domain error, 2 parse error.
  int run_script(std::istream &in, std::ostream &out, std::ostream &err);

private:
  SessionOptions opts_;
  ClassContext ctx_;
  std::map<std::string, std::shared_ptr<const Leq1Relation>> grids_;
};

} // namespace ordwb
