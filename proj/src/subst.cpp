#include "ordwb/subst.hpp"

#include <algorithm>

namespace ordwb {

using nlohmann::json;

namespace {

bool path_inside(const std::vector<Leaf::Digit> &tail, int n) {
  if (tail.empty())
    return true;
  const auto &d = tail.front();
  // first step must stay below from(+^n): S(k) with k < n, or C(i,.) with i <= n
  return d.canon ? d.i <= n : d.i < n;
}

bool safe_less(const Leaf &a, const Term &b) {
  try {
    return Term::leaf(a) < b;
  } catch (const IncomparableError &) {
    return false;
  }
}

} // namespace

SubstMap SubstMap::identity() {
  SubstMap m;
  m.rule_ = Rule::IdentityBelow;
  return m;
}

SubstMap SubstMap::make_map(std::vector<std::pair<Leaf, Leaf>> pairs) {
  return make(std::move(pairs), Rule::None, std::nullopt, std::nullopt);
}

SubstMap SubstMap::make(std::vector<std::pair<Leaf, Leaf>> pairs, Rule rule,
                        std::optional<Term> threshold, std::optional<Rebase> rebase) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  for (std::size_t j = 1; j < pairs.size(); ++j) {
    if (pairs[j - 1].first == pairs[j].first)
      throw DomainError("duplicate domain leaf " + render(pairs[j].first));
    if (!(pairs[j - 1].second < pairs[j].second))
      throw DomainError("not strictly increasing: " + render(pairs[j - 1].first) + " < " +
                        render(pairs[j].first) + " but " + render(pairs[j - 1].second) +
                        " >= " + render(pairs[j].second));
  }
  if (rule == Rule::IdentityBelow && threshold) {
    for (const auto &[a, b] : pairs) {
      bool src_below = Term::leaf(a) < *threshold;
      if (src_below && a != b)
        throw DomainError("override " + render(a) + " conflicts with identity below " +
                          render(*threshold));
      if (!src_below && Term::leaf(b) < *threshold)
        throw DomainError("not strictly increasing: image " + render(b) +
                          " falls inside the identity region");
    }
  }
  if (rebase) {
    if (rebase->n < 1 || rebase->from.level() < rebase->n || rebase->to.level() < rebase->n)
      throw DomainError("rebase needs both ends of level >= " + std::to_string(rebase->n));
  }
  SubstMap m;
  m.overrides_ = std::move(pairs);
  m.rule_ = rule;
  m.threshold_ = std::move(threshold);
  m.rebase_ = std::move(rebase);
  return m;
}

std::optional<Leaf> SubstMap::basic_apply(const Leaf &e) const {
  for (const auto &[a, b] : overrides_)
    if (a == e)
      return b;
  if (rebase_) {
    std::vector<Leaf::Digit> tail;
    if (e.descends_from(rebase_->from, &tail) && path_inside(tail, rebase_->n))
      return e.with_root_replaced(rebase_->from, rebase_->to);
  }
  if (rule_ == Rule::IdentityBelow && (!threshold_ || safe_less(e, *threshold_)))
    return e;
  return std::nullopt;
}

bool SubstMap::in_domain(const Leaf &e) const {
  if (outer_) {
    if (!inner_->in_domain(e))
      return false;
    return outer_->in_domain(inner_->apply(e));
  }
  return basic_apply(e).has_value();
}

Leaf SubstMap::apply(const Leaf &e) const {
  if (outer_)
    return outer_->apply(inner_->apply(e));
  auto r = basic_apply(e);
  if (!r)
    throw DomainError("leaf outside map domain: " + render(e));
  return *r;
}

bool SubstMap::is_identity() const {
  return !outer_ && overrides_.empty() && !rebase_ && rule_ == Rule::IdentityBelow &&
         !threshold_;
}

std::vector<Leaf> SubstMap::support() const {
  std::vector<Leaf> out;
  if (outer_) {
    out = inner_->support();
    // outer support points that inner fixes are pinned down too
    for (const auto &e : outer_->support())
      if (inner_->in_domain(e) && inner_->apply(e) == e &&
          std::find(out.begin(), out.end(), e) == out.end())
        out.push_back(e);
  } else {
    for (const auto &p : overrides_)
      out.push_back(p.first);
    if (rebase_)
      out.push_back(rebase_->from);
  }
  sort_leaves_desc(out);
  return out;
}

Term apply_subst(const Term &x, const SubstMap &f) {
  switch (x.kind()) {
  case Term::Kind::Zero:
  case Term::Kind::Nat:
    return x;
  case Term::Kind::Leaf:
    return Term::leaf(f.apply(x.as_leaf()));
  case Term::Kind::Cnf:
    break;
  }
  std::vector<Monomial> out;
  for (const auto &m : x.monomials()) {
    Term e = apply_subst(m.exp, f);
    if (!out.empty() && !(e < out.back().exp))
      throw DomainError("map does not preserve order inside " + render(x));
    out.push_back({e, m.coeff});
  }
  return Term::from_monomials(std::move(out));
}

SubstMap invert_map(const SubstMap &f) {
  if (f.is_composite())
    return compose_maps(invert_map(f.inner()), invert_map(f.outer()));
  std::vector<std::pair<Leaf, Leaf>> inv;
  for (const auto &[a, b] : f.overrides())
    inv.push_back({b, a});
  std::optional<SubstMap::Rebase> rb;
  if (f.rebase())
    rb = SubstMap::Rebase{f.rebase()->to, f.rebase()->from, f.rebase()->n};
  return SubstMap::make(std::move(inv), f.rule(), f.threshold(), rb);
}

SubstMap compose_maps(const SubstMap &outer, const SubstMap &inner) {
  if (outer.is_identity())
    return inner;
  if (inner.is_identity())
    return outer;
  for (const auto &e : inner.support()) {
    Leaf img = inner.apply(e);
    if (!outer.in_domain(img))
      throw DomainError("image " + render(img) + " of " + render(e) +
                        " escapes the outer domain");
  }
  bool finite = !outer.is_composite() && !inner.is_composite() &&
                outer.rule() == SubstMap::Rule::None && !outer.rebase() &&
                inner.rule() == SubstMap::Rule::None && !inner.rebase();
  if (finite) {
    std::vector<std::pair<Leaf, Leaf>> pairs;
    for (const auto &[a, b] : inner.overrides())
      pairs.push_back({a, outer.apply(b)});
    return SubstMap::make_map(std::move(pairs));
  }
  SubstMap m;
  m.outer_ = std::make_shared<SubstMap>(outer);
  m.inner_ = std::make_shared<SubstMap>(inner);
  return m;
}

const char *to_string(MapOrder o) {
  switch (o) {
  case MapOrder::LE:
    return "LE";
  case MapOrder::LT:
    return "LT";
  case MapOrder::GT:
    return "GT";
  case MapOrder::GE:
    return "GE";
  case MapOrder::EQ:
    return "EQ";
  case MapOrder::INCOMPARABLE:
    return "INCOMPARABLE";
  }
  return "?";
}

namespace {

bool same_rules(const SubstMap &f, const SubstMap &g) {
  if (f.is_composite() || g.is_composite())
    return false;
  if (f.rule() != g.rule())
    return false;
  if (f.threshold().has_value() != g.threshold().has_value())
    return false;
  if (f.threshold() && *f.threshold() != *g.threshold())
    return false;
  return true;
}

std::vector<Leaf> joint_support(const SubstMap &f, const SubstMap &g) {
  if (!same_rules(f, g))
    throw DomainError("maps have different domains (rule parts differ)");
  std::vector<Leaf> s = f.support(), t = g.support();
  s.insert(s.end(), t.begin(), t.end());
  sort_leaves_desc(s);
  for (const auto &e : s)
    if (!f.in_domain(e) || !g.in_domain(e))
      throw DomainError("maps have different domains at " + render(e));
  return s;
}

} // namespace

MapOrder compare_maps(const SubstMap &f, const SubstMap &g) {
  bool lt = false, gt = false;
  for (const auto &e : joint_support(f, g)) {
    auto c = compare(f.apply(e), g.apply(e));
    lt |= c == Ordering::LT;
    gt |= c == Ordering::GT;
  }
  if (lt && gt)
    return MapOrder::INCOMPARABLE;
  if (lt)
    return MapOrder::LT;
  if (gt)
    return MapOrder::GT;
  return MapOrder::EQ;
}

std::vector<Leaf> strict_set(const SubstMap &f, const SubstMap &g) {
  std::vector<Leaf> out;
  for (const auto &e : joint_support(f, g))
    if (f.apply(e) < g.apply(e))
      out.push_back(e);
  return out;
}

json map_to_json(const SubstMap &f) {
  if (f.is_composite())
    return json{{"compose", json::array({map_to_json(f.outer()), map_to_json(f.inner())})}};
  json ov = json::array();
  for (const auto &[a, b] : f.overrides())
    ov.push_back(json::array({render(a), render(b)}));
  json j{{"overrides", ov},
         {"rule", f.rule() == SubstMap::Rule::IdentityBelow ? "identity-below" : "none"},
         {"threshold", f.threshold() ? json(render(*f.threshold())) : json(nullptr)}};
  if (f.rebase())
    j["rebase"] = json{{"from", render(f.rebase()->from)},
                       {"to", render(f.rebase()->to)},
                       {"n", f.rebase()->n}};
  return j;
}

SubstMap map_from_json(const json &j, const AtomTable *atoms) {
  if (j.contains("compose")) {
    const auto &c = j.at("compose");
    return compose_maps(map_from_json(c.at(0), atoms), map_from_json(c.at(1), atoms));
  }
  std::vector<std::pair<Leaf, Leaf>> pairs;
  for (const auto &p : j.value("overrides", json::array()))
    pairs.push_back({parse_leaf(p.at(0).get<std::string>(), atoms),
                     parse_leaf(p.at(1).get<std::string>(), atoms)});
  std::string rule = j.value("rule", "none");
  SubstMap::Rule r;
  if (rule == "none")
    r = SubstMap::Rule::None;
  else if (rule == "identity-below")
    r = SubstMap::Rule::IdentityBelow;
  else
    throw DomainError("unknown map rule: " + rule);
  std::optional<Term> th;
  if (j.contains("threshold") && !j.at("threshold").is_null())
    th = parse_ord(j.at("threshold").get<std::string>(), atoms);
  std::optional<SubstMap::Rebase> rb;
  if (j.contains("rebase")) {
    const auto &b = j.at("rebase");
    rb = SubstMap::Rebase{parse_leaf(b.at("from").get<std::string>(), atoms),
                          parse_leaf(b.at("to").get<std::string>(), atoms), b.at("n").get<int>()};
  }
  return SubstMap::make(std::move(pairs), r, th, rb);
}

} // namespace ordwb
