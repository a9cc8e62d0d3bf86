#pragma once

#include "ordwb/skeleton.hpp"

namespace ordwb {

struct Leq1Answer {
  bool value = false;
  std::string source; // "grid-relative" or "annotation"
};
// beta <=_1 x, from the grid relation or from x <= m(beta)
Leq1Answer decide_leq1(const MSource &src, const Term &beta, const Term &x);

// Is e a limit of Class(j)? Decided from leaf structure; atoms and canonical
// points of level exactly j are undecidable.
bool in_lim_class(const Leaf &e, int j);

struct GMembership {
  bool member = false;
  bool contained = false; // T(n-1,a,t) n a below beta, beta <= a
  std::vector<Leaf> tset;
  std::optional<Term> eta;    // not computed when containment fails
  std::optional<Term> target; // eta[g(n-1,a,beta)] + 1
  std::optional<Leq1Answer> leq1;
};
GMembership G_membership(const MSource &src, int n, const Leaf &alpha, const Term &t,
                         const Leaf &beta);

struct HierarchySet {
  enum class Kind { G, ATrace, M, S };
  HierarchySet(Kind k, int n, Leaf base, Term t)
      : kind(k), n(n), base(std::move(base)), t(std::move(t)) {}
  Kind kind;
  int n;
  Leaf base;
  Term t;
  std::vector<Term> members; // increasing
  bool sample_relative = true;
  std::string note;
  bool contains(const Term &x) const;
};
const char *to_string(HierarchySet::Kind k);

HierarchySet G_set(const MSource &src, int n, const Leaf &alpha, const Term &t,
                   const std::vector<Leaf> &sample);

// Lim over a finite sample. Structural keeps the members that lie in
// Lim Class(n-1) by leaf structure; Points keeps limit points of the sample
// itself, which a finite set never has.
enum class LimPolicy { Structural, Points };
HierarchySet A_successor_step(const MSource &src, int n, const Leaf &alpha, const Term &l,
                              const HierarchySet &prev,
                              LimPolicy policy = LimPolicy::Structural);

struct SInterval {
  HierarchySet set; // {q in (a, l) | T(i,a,q) n a below r}
  std::optional<std::vector<Term>> via_domain; // {q | Ep(q) in Dom g(i,a,r)}
  Term l;
};
SInterval S_interval(const MSource &src, int i, const Leaf &alpha, const Leaf &r, const Term &t,
                     const std::vector<Term> &sample);

struct Transport {
  int n;
  Leaf r, kappa;
  SubstMap R, H;
  Term forward(const Term &t) const { return apply_subst(t, R); }
  Term back(const Term &s) const { return apply_subst(s, H); }
};
Transport M_transport(int n, const Leaf &r, const Leaf &kappa);
// R applied to the sample points of [r, r(+^{n-1}))
HierarchySet M_set(const Transport &tr, const std::vector<Term> &sample);

// G at l+1 against the A-step from G at l, on one sample
struct InstanceCheck {
  bool evaluable = false;
  bool l_is_eta = false;
  std::size_t agree = 0;
  std::size_t skipped_betas = 0;
  std::vector<std::string> mismatches;
  std::string skipped; // why the pair (alpha, l) is not evaluable
};
InstanceCheck check_instance(const MSource &src, int n, const Leaf &alpha, const Term &l,
                             const std::vector<Leaf> &sample,
                             LimPolicy policy = LimPolicy::Structural);

nlohmann::json to_json(const HierarchySet &h);
nlohmann::json to_json(const GMembership &g);

} // namespace ordwb
