#pragma once

#include "ordwb/term.hpp"

#include "json.hpp"

#include <optional>

namespace ordwb {

// Strictly increasing partial map on epsilon leaves.
//
// A basic map is a finite override table plus optional structural rules:
//   identity-below t : every leaf below t is fixed (no threshold = all leaves)
//   rebase (a -> c, n): a leaf built over `a` by a path that stays inside
//                       (a, a(+^n)) is rebuilt over `c`
// Overrides win over rebase, rebase over identity. Composites keep the two
// factors and apply them in sequence.
class SubstMap {
public:
  enum class Rule { None, IdentityBelow };
  struct Rebase {
    Leaf from;
    Leaf to;
    int n;
  };

  static SubstMap identity();
  static SubstMap make_map(std::vector<std::pair<Leaf, Leaf>> pairs);
  static SubstMap make(std::vector<std::pair<Leaf, Leaf>> pairs, Rule rule,
                       std::optional<Term> threshold, std::optional<Rebase> rebase);

  bool in_domain(const Leaf &e) const;
  Leaf apply(const Leaf &e) const;

  bool is_composite() const { return (bool)outer_; }
  bool is_identity() const;
  const std::vector<std::pair<Leaf, Leaf>> &overrides() const { return overrides_; }
  Rule rule() const { return rule_; }
  const std::optional<Term> &threshold() const { return threshold_; }
  const std::optional<Rebase> &rebase() const { return rebase_; }
  const SubstMap &outer() const { return *outer_; }
  const SubstMap &inner() const { return *inner_; }

  // finite set of leaves on which the map is pinned down beyond its rules
  std::vector<Leaf> support() const;

  friend SubstMap compose_maps(const SubstMap &outer, const SubstMap &inner);

private:
  std::vector<std::pair<Leaf, Leaf>> overrides_; // sorted by source
  Rule rule_ = Rule::None;
  std::optional<Term> threshold_;
  std::optional<Rebase> rebase_;
  std::shared_ptr<const SubstMap> outer_, inner_;

  std::optional<Leaf> basic_apply(const Leaf &e) const;
};

Term apply_subst(const Term &x, const SubstMap &f);
SubstMap invert_map(const SubstMap &f);
SubstMap compose_maps(const SubstMap &outer, const SubstMap &inner);

enum class MapOrder { LE, LT, GT, GE, EQ, INCOMPARABLE };
const char *to_string(MapOrder o);
// Pointwise comparison on the union of both supports; the rule parts must
// agree, otherwise the domains differ and DomainError is thrown.
MapOrder compare_maps(const SubstMap &f, const SubstMap &g);
// {e in support | f(e) < g(e)}
std::vector<Leaf> strict_set(const SubstMap &f, const SubstMap &g);

nlohmann::json map_to_json(const SubstMap &f);
SubstMap map_from_json(const nlohmann::json &j, const AtomTable *atoms = nullptr);

} // namespace ordwb
