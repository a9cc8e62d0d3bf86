#pragma once

#include "ordwb/term.hpp"

#include "json.hpp"

#include <optional>

namespace ordwb {

// Declared class atoms plus the partial table of known m-values.
class ClassContext {
public:
  const AtomDecl &declare(const std::string &name, int level);
  const AtomTable &atoms() const { return atoms_; }
  Leaf atom(const std::string &name) const { return atoms_.leaf(name); }
  // largest level among declared atoms, at least 1
  int n_max() const;

  Term parse(const std::string &text) const { return parse_ord(text, &atoms_); }
  Leaf parse_leaf(const std::string &text) const { return ordwb::parse_leaf(text, &atoms_); }

  // Records m(x) = m. A second, different value for the same x is an error.
  void annotate_m(const Term &x, const Term &m);
  std::optional<Term> annotated_m(const Term &x) const;
  // (x, m(x)) ordered by the rendering of x
  std::vector<std::pair<Term, Term>> annotations() const;

  nlohmann::json to_json() const;
  static ClassContext from_json(const nlohmann::json &j);

private:
  AtomTable atoms_;
  std::map<std::string, std::pair<Term, Term>> m_;
};

ClassContext load_context(const std::string &path);
void save_context(const ClassContext &ctx, const std::string &path);

} // namespace ordwb
