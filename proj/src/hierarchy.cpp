#include "ordwb/hierarchy.hpp"

#include <algorithm>

namespace ordwb {

using nlohmann::json;

Leq1Answer decide_leq1(const MSource &src, const Term &beta, const Term &x) {
  if (auto *rel = src.relation()) {
    src.check(beta);
    src.check(x);
    const Grid &g = rel->grid();
    int ib = g.require(beta);
    if (x < beta)
      return {false, "grid-relative"};
    // by connectedness a grid point on either side of x settles it: below
    // x and out of reach means false, above x and in reach means true
    int reach = rel->mhat()[ib];
    if (x <= g[reach])
      return {true, "grid-relative"};
    if (reach + 1 < (int)g.size() && g[reach + 1] <= x)
      return {false, "grid-relative"};
    throw DomainError("<=_1 query not settled by the grid: " + render(beta) + " <=_1 " +
                      render(x));
  }
  // connectedness: beta <=_1 x iff beta <= x <= m(beta)
  Term m = src.m(beta);
  return {beta <= x && x <= m, "annotation"};
}

bool in_lim_class(const Leaf &e, int j) {
  if (e.level() > j)
    return true;
  if (e.level() < j)
    return false;
  switch (e.kind()) {
  case Leaf::Kind::Conc:
    return classify(e.index()).is_limit;
  case Leaf::Kind::Succ:
    // the least Class(j) point above its base
    return false;
  default:
    throw DomainError("whether " + render(e) + " is a limit of Class(" + std::to_string(j) +
                      ") is not determined");
  }
}

static void check_n(int n, const Leaf &alpha) {
  if (n < 2)
    throw DomainError("hierarchy levels start at n = 2");
  if (alpha.level() < n - 1)
    throw DomainError(render(alpha) + " has level below " + std::to_string(n - 1));
}

GMembership G_membership(const MSource &src, int n, const Leaf &alpha, const Term &t,
                         const Leaf &beta) {
  check_n(n, alpha);
  if (beta.level() < n - 1)
    throw DomainError(render(beta) + " is not in Class(" + std::to_string(n - 1) + ")");
  src.check(Term::leaf(beta));
  GMembership r;
  r.tset = T_set(src, n - 1, alpha, t);
  r.contained = beta <= alpha;
  for (const auto &x : r.tset)
    if (x < alpha && !(x < beta))
      r.contained = false;
  if (!r.contained)
    return r;
  r.eta = eta_compute(src, n - 1, alpha, t);
  r.target = add(apply_subst(*r.eta, g_map(n - 1, alpha, beta)), Term::nat(1));
  r.leq1 = decide_leq1(src, Term::leaf(beta), *r.target);
  r.member = r.leq1->value;
  return r;
}

bool HierarchySet::contains(const Term &x) const {
  return std::find(members.begin(), members.end(), x) != members.end();
}

const char *to_string(HierarchySet::Kind k) {
  switch (k) {
  case HierarchySet::Kind::G:
    return "G";
  case HierarchySet::Kind::ATrace:
    return "A-successor-trace";
  case HierarchySet::Kind::M:
    return "M";
  case HierarchySet::Kind::S:
    return "S";
  }
  return "?";
}

static void sort_terms(std::vector<Term> &v) {
  std::sort(v.begin(), v.end(), [](const Term &a, const Term &b) { return a < b; });
}

HierarchySet G_set(const MSource &src, int n, const Leaf &alpha, const Term &t,
                   const std::vector<Leaf> &sample) {
  HierarchySet h(HierarchySet::Kind::G, n, alpha, t);
  for (const auto &b : sample)
    if (G_membership(src, n, alpha, t, b).member)
      h.members.push_back(Term::leaf(b));
  sort_terms(h.members);
  h.note = "membership decided per sampled beta";
  return h;
}

HierarchySet A_successor_step(const MSource &src, int n, const Leaf &alpha, const Term &l,
                              const HierarchySet &prev, LimPolicy policy) {
  check_n(n, alpha);
  Term eta = eta_compute(src, n - 1, alpha, l);
  HierarchySet h(HierarchySet::Kind::ATrace, n, alpha, add(l, Term::nat(1)));
  if (l < eta) {
    h.members = prev.members;
    h.note = "l < eta(n-1, alpha, l): unchanged";
    return h;
  }
  if (policy == LimPolicy::Structural) {
    for (const auto &b : prev.members)
      if (in_lim_class(b.as_leaf(), n - 1))
        h.members.push_back(b);
    h.note = "l = eta(n-1, alpha, l): Lim taken over the sample, keeping members in "
             "Lim Class(" + std::to_string(n - 1) + ") by leaf structure (sample-relative)";
  } else {
    h.note = "l = eta(n-1, alpha, l): Lim taken over the finite sample, which has no limit "
             "points (sample-relative)";
  }
  return h;
}

SInterval S_interval(const MSource &src, int i, const Leaf &alpha, const Leaf &r, const Term &t,
                     const std::vector<Term> &sample) {
  if (i < 1)
    throw DomainError("S needs i >= 1");
  Term l = l_compute(src, i, alpha, t);
  SInterval out{HierarchySet(HierarchySet::Kind::S, i, alpha, t), std::nullopt, l};
  Term a = Term::leaf(alpha);
  std::optional<SubstMap> g;
  if (r.level() >= i && alpha.level() >= i) {
    g = g_map(i, alpha, r);
    out.via_domain.emplace();
  }
  for (const auto &q : sample) {
    if (!(a < q) || !(q < l))
      continue;
    bool ok = true;
    for (const auto &x : T_set(src, i, alpha, q))
      if (x < alpha && !(x < r))
        ok = false;
    if (ok)
      out.set.members.push_back(q);
    if (g) {
      bool dom = true;
      for (const auto &x : ep_set(q))
        dom = dom && g->in_domain(x);
      if (dom)
        out.via_domain->push_back(q);
    }
  }
  sort_terms(out.set.members);
  if (out.via_domain)
    sort_terms(*out.via_domain);
  out.set.note = "q sampled in (alpha, l(i, alpha, t)) with l = " + render(l);
  return out;
}

Transport M_transport(int n, const Leaf &r, const Leaf &kappa) {
  if (n < 2)
    throw DomainError("transport needs n >= 2");
  if (!(r < kappa))
    throw DomainError("transport needs r < kappa");
  return Transport{n, r, kappa, g_map(n - 1, r, kappa), g_map(n - 1, kappa, r)};
}

HierarchySet M_set(const Transport &tr, const std::vector<Term> &sample) {
  HierarchySet h(HierarchySet::Kind::M, tr.n, tr.r, Term::leaf(tr.kappa));
  Term lo = Term::leaf(tr.r), hi = Term::leaf(Leaf::succ(tr.r, tr.n - 1));
  for (const auto &t : sample)
    if (lo <= t && t < hi)
      h.members.push_back(tr.forward(t));
  sort_terms(h.members);
  h.members.erase(std::unique(h.members.begin(), h.members.end()), h.members.end());
  h.note = "image of the sampled part of [r, r(+" + std::to_string(tr.n - 1) + "))";
  return h;
}

InstanceCheck check_instance(const MSource &src, int n, const Leaf &alpha, const Term &l,
                             const std::vector<Leaf> &sample, LimPolicy policy) {
  InstanceCheck c;
  Term l1 = add(l, Term::nat(1));
  Term eta;
  try {
    eta = eta_compute(src, n - 1, alpha, l);
    eta_compute(src, n - 1, alpha, l1);
  } catch (const DomainError &e) {
    c.skipped = e.what();
    return c;
  }
  c.evaluable = true;
  c.l_is_eta = l == eta;
  HierarchySet prev(HierarchySet::Kind::G, n, alpha, l);
  std::vector<Leaf> kept;
  std::vector<bool> direct;
  for (const auto &b : sample) {
    try {
      bool at_l = G_membership(src, n, alpha, l, b).member;
      bool at_l1 = G_membership(src, n, alpha, l1, b).member;
      // an undecidable Lim question drops this beta from the comparison
      if (c.l_is_eta && policy == LimPolicy::Structural && at_l)
        in_lim_class(b, n - 1);
      if (at_l)
        prev.members.push_back(Term::leaf(b));
      kept.push_back(b);
      direct.push_back(at_l1);
    } catch (const DomainError &) {
      ++c.skipped_betas;
    }
  }
  HierarchySet step = A_successor_step(src, n, alpha, l, prev, policy);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    bool a = step.contains(Term::leaf(kept[i]));
    if (a == direct[i])
      ++c.agree;
    else
      c.mismatches.push_back("alpha=" + render(alpha) + " l=" + render(l) +
                             " beta=" + render(kept[i]) + ": A-step " + (a ? "keeps" : "drops") +
                             ", G at l+1 says " + (direct[i] ? "member" : "not a member"));
  }
  return c;
}

json to_json(const HierarchySet &h) {
  json m = json::array();
  for (const auto &x : h.members)
    m.push_back(render(x));
  return json{{"kind", to_string(h.kind)}, {"n", h.n},
              {"base", render(h.base)},   {"t", render(h.t)},
              {"members", m},             {"sample_relative", h.sample_relative},
              {"note", h.note}};
}

json to_json(const GMembership &g) {
  json j{{"member", g.member}, {"contained", g.contained}, {"tset", leaves_to_json(g.tset)}};
  j["eta"] = g.eta ? json(render(*g.eta)) : json(nullptr);
  j["target"] = g.target ? json(render(*g.target)) : json(nullptr);
  if (g.leq1)
    j["leq1"] = json{{"value", g.leq1->value}, {"source", g.leq1->source}};
  else
    j["leq1"] = nullptr;
  return j;
}

} // namespace ordwb
