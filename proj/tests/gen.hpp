#pragma once
// Random generators for property tests.

#include "ordwb/term.hpp"

#include <algorithm>
#include <random>

namespace gen {

using namespace ordwb;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng); }
  template <class T> const T &pick(const std::vector<T> &v) { return v[below(v.size())]; }
};

inline std::vector<Leaf> concrete_leaves(int n) {
  std::vector<Leaf> out;
  for (int j = 0; j < n; ++j)
    out.push_back(Leaf::eps(Term::nat(j)));
  return out;
}

// Terms of bounded nesting depth whose epsilon leaves come from a fixed pool.
struct TermGen {
  Rng &rng;
  std::vector<Leaf> pool;

  TermGen(Rng &r, std::vector<Leaf> p) : rng(r), pool(std::move(p)) {}

  Term term(int depth) {
    if (depth <= 1 || rng.below(4) == 0) {
      switch (rng.below(4)) {
      case 0:
        return Term::nat((long long)rng.below(5));
      case 1:
        return Term::omega();
      default:
        return Term::leaf(rng.pick(pool));
      }
    }
    std::vector<Monomial> ms;
    int n = 1 + (int)rng.below(3);
    std::vector<Term> exps;
    for (int j = 0; j < n; ++j)
      exps.push_back(term(depth - 1));
    std::sort(exps.begin(), exps.end(), [](const Term &a, const Term &b) { return a > b; });
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    for (auto &e : exps)
      ms.push_back({e, (long long)rng.below(3) + 1});
    return Term::from_monomials(ms);
  }
};

} // namespace gen
