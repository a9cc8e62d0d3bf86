#include "ordwb/oracle.hpp"

#include <algorithm>
#include <map>

namespace ordwb {

namespace {

struct TermLess {
  bool operator()(const Term &a, const Term &b) const { return a < b; }
};

std::uint64_t fnv1a(std::uint64_t h, const std::string &s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace

std::optional<std::pair<Term, Term>> split_last(const Term &t) {
  if (t.kind() != Term::Kind::Nat && t.kind() != Term::Kind::Cnf)
    return std::nullopt;
  auto ms = t.monomials();
  if (ms.size() == 1 && ms[0].coeff == 1)
    return std::nullopt;
  Monomial last = ms.back();
  ms.pop_back();
  if (last.coeff > 1)
    ms.push_back({last.exp, last.coeff - 1});
  return std::make_pair(Term::from_monomials(ms), omega_pow(last.exp));
}

GridSpec default_grid_spec() {
  GridSpec s;
  s.bound = parse_ord("eps(3)");
  for (const char *x : {"eps(0)", "eps(0)*2+1", "eps(1)", "eps(1)*2+1", "eps(2)", "eps(2)*2+1"})
    s.seeds.push_back(parse_ord(x));
  return s;
}

Grid build_grid(const GridSpec &spec) {
  if (!is_concrete(spec.bound))
    throw DomainError("grid bound must be concrete: " + render(spec.bound));
  std::map<Term, int, TermLess> pts;
  auto add_point = [&](const Term &t, int d) {
    if (!(t < spec.bound) || pts.count(t))
      return false;
    pts.emplace(t, d);
    if (pts.size() > spec.cap)
      throw DomainError("grid cap exceeded: more than " + std::to_string(spec.cap) +
                        " points below " + render(spec.bound));
    return true;
  };
  for (const Term &t : {Term(), Term::nat(1), Term::omega()})
    add_point(t, 0);
  for (const auto &s : spec.seeds) {
    if (!is_concrete(s))
      throw DomainError("grid seed must be concrete: " + render(s));
    if (!(s < spec.bound))
      throw DomainError("grid seed " + render(s) + " is not below the bound");
    add_point(s, 0);
  }
  // rounds == 0 closes completely
  for (int r = 1; spec.rounds == 0 || r <= spec.rounds; ++r) {
    std::vector<Term> cur;
    for (const auto &p : pts)
      cur.push_back(p.first);
    bool grew = false;
    for (const auto &x : cur) {
      if (spec.ops.succ)
        grew |= add_point(add(x, Term::nat(1)), r);
      if (spec.ops.twice)
        grew |= add_point(mul(x, Term::nat(2)), r);
      if (spec.ops.omega)
        grew |= add_point(omega_pow(x), r);
      if (spec.ops.sum)
        for (const auto &y : cur)
          grew |= add_point(add(x, y), r);
    }
    if (!grew)
      break;
  }
  if (spec.shadows > 0) {
    std::vector<Term> core;
    for (const auto &p : pts)
      core.push_back(p.first);
    for (std::size_t i = 0; i < core.size(); ++i) {
      const Term &e = core[i];
      if (e.kind() != Term::Kind::Leaf)
        continue;
      std::vector<Term> offsets;
      for (std::size_t j = i; j < core.size(); ++j) {
        const Term &y = core[j];
        if (y == e) {
          offsets.push_back(Term());
          continue;
        }
        auto ms = y.monomials();
        if (y.kind() != Term::Kind::Cnf || !(ms[0].exp == e) || ms[0].coeff != 1)
          break;
        offsets.push_back(Term::from_monomials({ms.begin() + 1, ms.end()}));
      }
      Term sigma = add(i > 0 ? core[i - 1] : Term(), Term::nat(1));
      // one tower level per offset, plus the margin
      int height = (int)offsets.size() + spec.shadows;
      for (int k = 0; k < height; ++k) {
        sigma = omega_pow(sigma);
        for (const auto &x : offsets)
          add_point(add(sigma, x), spec.rounds + 1);
      }
    }
  }
  // close under splitting off the last principal summand
  std::vector<Term> todo;
  for (const auto &p : pts)
    todo.push_back(p.first);
  while (!todo.empty()) {
    Term t = todo.back();
    todo.pop_back();
    if (auto bp = split_last(t))
      for (const Term &u : {bp->first, bp->second})
        if (add_point(u, spec.rounds + 1))
          todo.push_back(u);
  }
  std::vector<Term> points;
  std::vector<int> depth;
  for (const auto &[t, d] : pts) {
    points.push_back(t);
    depth.push_back(d);
  }
  return grid_from_points(std::move(points), std::move(depth), spec);
}

Grid grid_from_points(std::vector<Term> pts, std::vector<int> depth, GridSpec spec) {
  if (pts.size() != depth.size())
    throw DomainError("grid depth list does not match points");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i]))
      throw DomainError("grid points must be strictly increasing");
  Grid g;
  g.spec_ = std::move(spec);
  g.points_ = std::move(pts);
  g.depth_ = std::move(depth);
  g.index();
  return g;
}

void Grid::index() {
  std::size_t n = points_.size();
  split_.assign(n, {-1, -1});
  for (std::size_t i = 0; i < n; ++i)
    if (auto bp = split_last(points_[i])) {
      auto b = index_of(bp->first), p = index_of(bp->second);
      if (b && p)
        split_[i] = {*b, *p};
    }
  sums_.assign(n * n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (auto k = index_of(add(points_[a], points_[b])))
        sums_[a * n + b] = *k;
}

std::optional<int> Grid::index_of(const Term &t) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Term &a, const Term &b) { return a < b; });
  if (it == points_.end() || !(*it == t))
    return std::nullopt;
  return (int)(it - points_.begin());
}

int Grid::require(const Term &t) const {
  auto k = index_of(t);
  if (!k)
    throw DomainError("not a grid point: " + render(t));
  return *k;
}

std::uint64_t Grid::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < points_.size(); ++i)
    h = fnv1a(h, render(points_[i]) + "#" + std::to_string(depth_[i]) + ";");
  h = fnv1a(h, "param_depth=" + std::to_string(spec_.param_depth));
  return h;
}

} // namespace ordwb
