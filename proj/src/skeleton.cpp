#include "ordwb/skeleton.hpp"

#include <algorithm>
#include <set>

namespace ordwb {

const char *to_string(Mode m) { return m == Mode::Oracle ? "oracle" : "structural"; }

MSource MSource::structural(const ClassContext &ctx) {
  MSource s;
  s.ctx_ = &ctx;
  return s;
}

MSource MSource::oracle(const Leq1Relation &rel) {
  MSource s;
  s.rel_ = &rel;
  return s;
}

void MSource::check(const Term &t) const {
  if (rel_ && !is_concrete(t))
    throw DomainError("oracle mode takes concrete terms only: " + render(t));
}

std::optional<Term> MSource::try_m(const Term &x) const {
  if (rel_) {
    check(x);
    auto i = rel_->grid().index_of(x);
    if (!i)
      return std::nullopt;
    return rel_->grid()[rel_->mhat()[*i]];
  }
  if (auto a = ctx_->annotated_m(x))
    return a;
  // x = b + p with b, p < x pins any embedding of x to x itself;
  // the same goes for finite x
  Flags f = classify(x);
  if (f.is_zero || !f.is_principal || x.kind() == Term::Kind::Nat)
    return x;
  return std::nullopt;
}

Term MSource::m(const Term &x) const {
  if (auto v = try_m(x))
    return *v;
  if (rel_)
    throw DomainError("not a grid point: " + render(x));
  throw DomainError("m(" + render(x) + ") is not known; annotate it or declare its chain");
}

Leaf class_succ(const Leaf &a, int k) {
  if (k < 1)
    throw DomainError("successor index must be >= 1");
  if (a.level() < k)
    throw DomainError(render(a) + " has level " + std::to_string(a.level()) +
                      ", below " + std::to_string(k));
  return Leaf::succ(a, k);
}

std::vector<Leaf> chain_down(const Leaf &a, ClassContext *ctx) {
  std::vector<Leaf> chain{a};
  for (int j = a.level() - 1; j >= 1; --j)
    chain.push_back(class_succ(chain.back(), j));
  if (ctx) {
    Term top = mul_nat(Term::leaf(chain.back()), 2);
    for (const auto &e : chain)
      ctx->annotate_m(Term::leaf(e), top);
  }
  return chain;
}

int class_level(const Leaf &e) { return e.level(); }

int class_level(const Term &x) {
  return x.kind() == Term::Kind::Leaf ? x.as_leaf().level() : 0;
}

static std::optional<Leaf> locate_leaf(int j, const Leaf &e) {
  if (e.level() >= j)
    return e;
  switch (e.kind()) {
  case Leaf::Kind::Conc:
    // no concrete notation is taken to reach the least Class(2) element
    return std::nullopt;
  case Leaf::Kind::Atom:
    throw DomainError("lambda(" + std::to_string(j) + ", " + render(e) +
                      ") is undecidable: the atom's position relative to Class(" +
                      std::to_string(j) + ") is not declared");
  case Leaf::Kind::Succ:
  case Leaf::Kind::Canon:
    // both stay strictly below the next Class(j) element above their base
    return locate_leaf(j, e.base());
  }
  return std::nullopt;
}

std::optional<Leaf> lambda_locate(int j, const Term &t) {
  if (j < 1)
    throw DomainError("lambda needs j >= 1");
  switch (t.kind()) {
  case Term::Kind::Zero:
  case Term::Kind::Nat:
    return std::nullopt;
  case Term::Kind::Leaf:
    return locate_leaf(j, t.as_leaf());
  case Term::Kind::Cnf: {
    // epsilons are closed under omega^., so w^x and x share their interval
    Term x = t.monomials()[0].exp;
    if (x.kind() == Term::Kind::Leaf)
      return locate_leaf(j, x.as_leaf());
    return lambda_locate(j, x);
  }
  }
  return std::nullopt;
}

std::string render_lambda(const std::optional<Leaf> &d) { return d ? render(*d) : "-inf"; }

Term eta_floor(const Leaf &alpha, int k) {
  if (k < 1)
    throw DomainError("eta needs k >= 1");
  if (alpha.level() < k)
    throw DomainError(render(alpha) + " has level below " + std::to_string(k));
  Leaf x = alpha;
  for (int j = k - 1; j >= 1; --j)
    x = class_succ(x, j);
  return mul_nat(Term::leaf(x), 2);
}

namespace {

void check_interval(const MSource &src, int k, const Leaf &alpha, const Term &t) {
  src.check(Term::leaf(alpha));
  src.check(t);
  if (t < Term::leaf(alpha))
    throw DomainError(render(t) + " lies below " + render(alpha));
  auto lam = lambda_locate(k, t);
  if (!lam || *lam != alpha)
    throw DomainError(render(t) + " is not in [" + render(alpha) + ", " + render(alpha) +
                      "(+" + std::to_string(k) + ")); lambda gives " + render_lambda(lam));
}

// (r, m(r)) over the points of (alpha, t] the source knows about, increasing
std::vector<std::pair<Term, Term>> known_points(const MSource &src, const Leaf &alpha,
                                                const Term &t) {
  std::vector<std::pair<Term, Term>> out;
  Term a = Term::leaf(alpha);
  if (auto *rel = src.relation()) {
    const Grid &g = rel->grid();
    int ia = g.require(a), it = g.require(t);
    for (int r = ia + 1; r <= it; ++r)
      out.emplace_back(g[r], g[rel->mhat()[r]]);
    return out;
  }
  std::vector<Term> cand;
  for (const auto &[x, m] : src.context()->annotations())
    if (a < x && x <= t)
      cand.push_back(x);
  cand.push_back(t);
  Term p = leading_principal(t);
  if (a < p)
    cand.push_back(p);
  std::sort(cand.begin(), cand.end(), [](const Term &x, const Term &y) { return x < y; });
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (const auto &x : cand)
    out.emplace_back(x, src.m(x));
  return out;
}

} // namespace

Term eta_compute(const MSource &src, int k, const Leaf &alpha, const Term &t) {
  Term floor = eta_floor(alpha, k);
  check_interval(src, k, alpha, t);
  if (t <= floor)
    return floor;
  Term best = t;
  for (const auto &[r, m] : known_points(src, alpha, t))
    if (m > best)
      best = m;
  return best;
}

Term l_compute(const MSource &src, int i, const Leaf &alpha, const Term &t) {
  Term floor = eta_floor(alpha, i);
  check_interval(src, i, alpha, t);
  if (t <= floor)
    return floor;
  Term eta = eta_compute(src, i, alpha, t);
  for (const auto &[r, m] : known_points(src, alpha, t))
    if (m == eta)
      return r;
  throw DomainError("no point of (" + render(alpha) + ", " + render(t) + "] reaches " +
                    render(eta));
}

Term gamma_structural(const Leaf &e, int k) {
  if (k < 1)
    throw DomainError("canonical index must be >= 1");
  Term top = omega_tower(e, k);
  if (k == 1)
    return top;
  return add(top, omega_tower(e, k - 1));
}

CanonPoint canonical_point(int i, const Leaf &e, int k, ClassContext *ctx,
                           const Leq1Relation *rel) {
  if (i < 1 || k < 1)
    throw DomainError("canonical point needs i, k >= 1");
  if (e.level() < i)
    throw DomainError(render(e) + " has level " + std::to_string(e.level()) + ", below " +
                      std::to_string(i));
  CanonPoint cp;
  if (i == 1) {
    cp.x = omega_tower(e, k);
    cp.ochain = {e};
    if (rel) {
      cp.gamma = MSource::oracle(*rel).m(cp.x);
    } else {
      cp.gamma = gamma_structural(e, k);
      if (ctx)
        ctx->annotate_m(cp.x, cp.gamma);
    }
    return cp;
  }
  if (rel)
    throw DomainError("the grid holds no Class(" + std::to_string(i) + ") points");
  // o_i = e, o_{j-1} = x_k(j, o_j)
  std::vector<Leaf> o{e};
  for (int j = i; j >= 2; --j)
    o.push_back(Leaf::canon(j, o.back(), k));
  std::reverse(o.begin(), o.end());
  cp.x = Term::leaf(o[i - 2]);
  cp.gamma = gamma_structural(o[0], k);
  cp.ochain = o;
  if (ctx) {
    for (int j = 0; j + 1 < i; ++j)
      ctx->annotate_m(Term::leaf(o[j]), cp.gamma);
    ctx->annotate_m(omega_tower(o[0], k), cp.gamma);
  }
  return cp;
}

namespace {

struct LeafSet {
  std::vector<Leaf> v;
  bool insert(const Leaf &e) {
    if (std::find(v.begin(), v.end(), e) != v.end())
      return false;
    v.push_back(e);
    return true;
  }
  std::vector<Leaf> sorted() const {
    auto out = v;
    sort_leaves_desc(out);
    return out;
  }
};

bool inside(const Leaf &alpha, int n, const Leaf &e) {
  return alpha < e && e < Leaf::succ(alpha, n);
}

} // namespace

FSResult f_and_S(const MSource &src, int n, const Leaf &alpha, const Leaf &delta) {
  if (n < 1)
    throw DomainError("f/S need n >= 1");
  if (n == 1)
    return {};
  if (!inside(alpha, n, delta) || delta.level() < n - 1)
    throw DomainError(render(delta) + " is not a Class(" + std::to_string(n - 1) +
                      ") point of (" + render(alpha) + ", " + render(alpha) + "(+" +
                      std::to_string(n) + "))");
  std::vector<Leaf> cand;
  if (auto *rel = src.relation()) {
    for (const auto &p : rel->grid().points())
      if (p.kind() == Term::Kind::Leaf)
        cand.push_back(p.as_leaf());
  } else {
    for (const auto &[x, m] : src.context()->annotations())
      if (x.kind() == Term::Kind::Leaf)
        cand.push_back(x.as_leaf());
  }
  Term md = src.m(Term::leaf(delta));
  FSResult r;
  for (const auto &e : cand) {
    if (e.level() < n - 1 || !(alpha < e) || !(e < delta))
      continue;
    Term moved = apply_subst(src.m(Term::leaf(e)), g_map(n - 1, e, delta));
    if (moved >= md)
      r.S.push_back(e);
  }
  sort_leaves_desc(r.S);
  r.f = {delta};
  if (!r.S.empty()) {
    auto below = f_and_S(src, n, alpha, r.S.front());
    r.f.insert(r.f.end(), below.f.begin(), below.f.end());
  }
  return r;
}

std::vector<Leaf> T_set(const MSource &src, int n, const Leaf &alpha, const Term &t, int cap) {
  if (n < 1)
    throw DomainError("T-set needs n >= 1");
  if (alpha.level() < n)
    throw DomainError(render(alpha) + " has level below " + std::to_string(n));
  src.check(Term::leaf(alpha));
  src.check(t);
  if (!(t < Term::leaf(Leaf::succ(alpha, n))))
    throw DomainError(render(t) + " is not below " + render(Leaf::succ(alpha, n)));
  if (n == 1)
    return ep_set(t);

  LeafSet out;
  for (const Leaf &E : ep_set(t)) {
    if (E <= alpha) {
      out.insert(E);
      continue;
    }
    // E_1 = lambda(1, m(E)), E_j = lambda(j, E_{j-1})
    std::vector<Leaf> frontier;
    std::set<std::string> expanded;
    auto consider = [&](const Leaf &d) {
      int lv = d.level();
      if (lv >= 1 && lv <= n - 1 && inside(alpha, n, d) && expanded.insert(render(d)).second)
        frontier.push_back(d);
    };
    auto cur = lambda_locate(1, src.m(Term::leaf(E)));
    for (int j = 1; cur && j <= n; ++j) {
      consider(*cur);
      if (j < n)
        cur = lambda_locate(j + 1, Term::leaf(*cur));
    }
    for (int depth = 0; !frontier.empty(); ++depth) {
      if (depth >= cap) {
        std::string trace;
        for (const auto &d : frontier)
          trace += (trace.empty() ? "" : ", ") + render(d);
        throw DomainError("T-set iteration did not stabilise after " + std::to_string(cap) +
                          " steps; still expanding {" + trace + "}");
      }
      std::vector<Leaf> layer;
      layer.swap(frontier);
      for (const Leaf &d : layer) {
        int k = d.level();
        auto lam = lambda_locate(k + 1, Term::leaf(d));
        if (!lam)
          throw DomainError("lambda(" + std::to_string(k + 1) + ", " + render(d) + ") is -inf");
        std::vector<Leaf> items = f_and_S(src, k + 1, *lam, d).f;
        for (const auto &x : ep_set(src.m(Term::leaf(d))))
          items.push_back(x);
        items.push_back(*lam);
        for (const auto &x : items) {
          out.insert(x);
          consider(x);
        }
      }
    }
  }
  return out.sorted();
}

SubstMap g_map(int n, const Leaf &alpha, const Leaf &c) {
  if (n < 1)
    throw DomainError("g needs n >= 1");
  if (alpha.level() < n || c.level() < n)
    throw DomainError("g(" + std::to_string(n) + ", " + render(alpha) + ", " + render(c) +
                      ") needs both leaves of level >= " + std::to_string(n));
  Term lo = c < alpha ? Term::leaf(c) : Term::leaf(alpha);
  return SubstMap::make({}, SubstMap::Rule::IdentityBelow, lo, SubstMap::Rebase{alpha, c, n});
}

nlohmann::json leaves_to_json(const std::vector<Leaf> &v) {
  auto j = nlohmann::json::array();
  for (const auto &e : v)
    j.push_back(render(e));
  return j;
}

std::string render_set(const std::vector<Leaf> &v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + render(v[i]);
  return s + "}";
}

} // namespace ordwb
