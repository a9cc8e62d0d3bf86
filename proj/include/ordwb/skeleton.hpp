#pragma once

#include "ordwb/context.hpp"
#include "ordwb/oracle.hpp"
#include "ordwb/subst.hpp"

namespace ordwb {

enum class Mode { Structural, Oracle };
const char *to_string(Mode m);

// Where m-values come from: the annotation table (plus m(t) = t for
// non-principal t, which holds outright), or m-hat on a computed grid.
class MSource {
public:
  static MSource structural(const ClassContext &ctx);
  static MSource oracle(const Leq1Relation &rel);

  Mode mode() const { return rel_ ? Mode::Oracle : Mode::Structural; }
  const ClassContext *context() const { return ctx_; }
  const Leq1Relation *relation() const { return rel_; }

  std::optional<Term> try_m(const Term &x) const;
  // DomainError when the value is not known
  Term m(const Term &x) const;
  // oracle mode only accepts concrete terms
  void check(const Term &t) const;

private:
  const ClassContext *ctx_ = nullptr;
  const Leq1Relation *rel_ = nullptr;
};

Leaf class_succ(const Leaf &a, int k);
// [a_n, ..., a_1]; records m(a_j) = a_1*2 when ctx is given
std::vector<Leaf> chain_down(const Leaf &a, ClassContext *ctx = nullptr);
int class_level(const Term &x);
int class_level(const Leaf &e);

// nullopt is -infinity
std::optional<Leaf> lambda_locate(int j, const Term &t);
std::string render_lambda(const std::optional<Leaf> &d);

// a(+^{k-1})...(+^1)*2, the case-1 value of eta
Term eta_floor(const Leaf &alpha, int k);
Term eta_compute(const MSource &src, int k, const Leaf &alpha, const Term &t);
Term l_compute(const MSource &src, int i, const Leaf &alpha, const Term &t);

struct CanonPoint {
  Term x;
  Term gamma;
  std::vector<Leaf> ochain; // o_1 > ... > o_i = e
};
// gamma_k(1, e) when no grid is consulted
Term gamma_structural(const Leaf &e, int k);
// With `rel` (i = 1 only) gamma is m-hat of x. Annotations go into ctx if given.
CanonPoint canonical_point(int i, const Leaf &e, int k, ClassContext *ctx,
                           const Leq1Relation *rel = nullptr);

std::vector<Leaf> T_set(const MSource &src, int n, const Leaf &alpha, const Term &t,
                        int cap = 16);

struct FSResult {
  std::vector<Leaf> S; // decreasing
  std::vector<Leaf> f; // decreasing, f[0] = delta
};
FSResult f_and_S(const MSource &src, int n, const Leaf &alpha, const Leaf &delta);

SubstMap g_map(int n, const Leaf &alpha, const Leaf &c);

nlohmann::json leaves_to_json(const std::vector<Leaf> &v);
std::string render_set(const std::vector<Leaf> &v);

} // namespace ordwb
