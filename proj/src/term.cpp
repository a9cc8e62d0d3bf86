#include "ordwb/term.hpp"

#include <algorithm>
#include <array>

namespace ordwb {

// ---- Leaf ----

Leaf Leaf::eps(const Term &index) {
  if (!is_concrete(index))
    throw DomainError("eps index must be a concrete term: " + render(index));
  auto n = std::make_shared<LeafNode>();
  n->kind = Kind::Conc;
  n->index = index;
  n->level = 1;
  return Leaf(n);
}

Leaf Leaf::atom(const std::string &name, int level, int rank) {
  if (level < 1)
    throw DomainError("atom level must be >= 1: " + name);
  auto n = std::make_shared<LeafNode>();
  n->kind = Kind::Atom;
  n->name = name;
  n->level = level;
  n->rank = rank;
  return Leaf(n);
}

Leaf Leaf::succ(const Leaf &base, int k) {
  if (k < 1)
    throw DomainError("successor index must be >= 1");
  if (base.level() < k)
    throw DomainError("level too low: " + render(base) + " has level " +
                      std::to_string(base.level()) + ", (+" + std::to_string(k) + ") needs " +
                      std::to_string(k));
  if (base.kind() == Kind::Conc)
    return eps(add(base.index(), Term::nat(1)));
  auto n = std::make_shared<LeafNode>();
  n->kind = Kind::Succ;
  n->base = base;
  n->k = k;
  n->level = k;
  return Leaf(n);
}

Leaf Leaf::canon(int i, const Leaf &base, int k) {
  if (i < 2)
    throw DomainError("canonical point leaves need i >= 2");
  if (k < 1)
    throw DomainError("canonical point index must be >= 1");
  if (base.level() < i)
    throw DomainError("level too low: " + render(base) + " for x_" + std::to_string(k) + "(" +
                      std::to_string(i) + ", .)");
  auto n = std::make_shared<LeafNode>();
  n->kind = Kind::Canon;
  n->base = base;
  n->i = i;
  n->k = k;
  n->level = i - 1;
  return Leaf(n);
}

Leaf::Kind Leaf::kind() const { return p_->kind; }
int Leaf::level() const { return p_->level; }
const Term &Leaf::index() const { return p_->index; }
const std::string &Leaf::name() const { return p_->name; }
int Leaf::rank() const { return p_->rank; }
int Leaf::k() const { return p_->k; }
int Leaf::i() const { return p_->i; }
const Leaf &Leaf::base() const { return p_->base; }

bool Leaf::concrete() const { return kind() == Kind::Conc; }

Leaf Leaf::root() const {
  const Leaf *x = this;
  while (x->kind() == Kind::Succ || x->kind() == Kind::Canon)
    x = &x->base();
  return *x;
}

std::vector<Leaf::Digit> Leaf::digits() const {
  std::vector<Digit> out;
  const Leaf *x = this;
  while (x->kind() == Kind::Succ || x->kind() == Kind::Canon) {
    if (x->kind() == Kind::Succ)
      out.push_back({false, x->k(), 0});
    else
      out.push_back({true, x->i(), x->k()});
    x = &x->base();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool Leaf::descends_from(const Leaf &anc, std::vector<Digit> *tail) const {
  std::vector<Digit> rev;
  const Leaf *x = this;
  while (true) {
    if (*x == anc) {
      if (tail) {
        tail->assign(rev.rbegin(), rev.rend());
      }
      return true;
    }
    if (x->kind() == Kind::Succ)
      rev.push_back({false, x->k(), 0});
    else if (x->kind() == Kind::Canon)
      rev.push_back({true, x->i(), x->k()});
    else
      return false;
    x = &x->base();
  }
}

Leaf Leaf::with_root_replaced(const Leaf &anc, const Leaf &repl) const {
  std::vector<Digit> tail;
  if (!descends_from(anc, &tail))
    throw DomainError(render(*this) + " is not built over " + render(anc));
  Leaf out = repl;
  for (const auto &d : tail)
    out = d.canon ? canon(d.i, out, d.k) : succ(out, d.i);
  return out;
}

bool Leaf::operator==(const Leaf &o) const {
  if (p_ == o.p_)
    return true;
  if (!p_ || !o.p_ || kind() != o.kind())
    return false;
  switch (kind()) {
  case Kind::Conc:
    return index() == o.index();
  case Kind::Atom:
    return name() == o.name() && level() == o.level() && rank() == o.rank();
  case Kind::Succ:
    return k() == o.k() && base() == o.base();
  case Kind::Canon:
    return i() == o.i() && k() == o.k() && base() == o.base();
  }
  return false;
}

// ---- Term ----

Term::Term() = default;

Term Term::nat(const Nat &n) {
  if (n < 0)
    throw DomainError("negative natural");
  if (n == 0)
    return Term();
  auto p = std::make_shared<TermNode>();
  p->kind = Kind::Nat;
  p->n = n;
  return Term(p);
}

Term Term::leaf(const Leaf &e) {
  auto p = std::make_shared<TermNode>();
  p->kind = Kind::Leaf;
  p->leaf = e;
  return Term(p);
}

Term Term::omega() { return from_monomials({{nat(1), 1}}); }

Term Term::from_monomials(std::vector<Monomial> ms) {
  for (const auto &m : ms)
    if (m.coeff <= 0)
      throw DomainError("monomial coefficient must be positive");
  if (ms.empty())
    return Term();
  if (ms.size() == 1 && ms[0].exp.is_zero())
    return nat(ms[0].coeff);
  if (ms.size() == 1 && ms[0].coeff == 1 && ms[0].exp.kind() == Kind::Leaf)
    return ms[0].exp;
  auto p = std::make_shared<TermNode>();
  p->kind = Kind::Cnf;
  p->monos = std::move(ms);
  return Term(p);
}

Term::Kind Term::kind() const { return p_ ? p_->kind : Kind::Zero; }
const Nat &Term::nat_value() const { return p_->n; }
const Leaf &Term::as_leaf() const { return p_->leaf; }

std::vector<Monomial> Term::monomials() const {
  switch (kind()) {
  case Kind::Zero:
    return {};
  case Kind::Nat:
    return {{Term(), p_->n}};
  case Kind::Cnf:
    return p_->monos;
  case Kind::Leaf:
    return {{*this, 1}};
  }
  return {};
}

bool Term::operator==(const Term &o) const {
  if (p_ == o.p_)
    return true;
  if (kind() != o.kind())
    return false;
  switch (kind()) {
  case Kind::Zero:
    return true;
  case Kind::Nat:
    return p_->n == o.p_->n;
  case Kind::Leaf:
    return p_->leaf == o.p_->leaf;
  case Kind::Cnf: {
    const auto &a = p_->monos, &b = o.p_->monos;
    if (a.size() != b.size())
      return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j].coeff != b[j].coeff || a[j].exp != b[j].exp)
        return false;
    return true;
  }
  }
  return false;
}

// ---- ordering ----

namespace {

Ordering cmp_int(long long a, long long b) {
  return a < b ? Ordering::LT : (a > b ? Ordering::GT : Ordering::EQ);
}

// S(k) sits at (k,1,0); C(i,k) at (i,0,k), strictly between S(i-1) and S(i)
Ordering cmp_digit(const Leaf::Digit &a, const Leaf::Digit &b) {
  auto key = [](const Leaf::Digit &d) {
    return std::array<int, 3>{d.i, d.canon ? 0 : 1, d.canon ? d.k : 0};
  };
  auto ka = key(a), kb = key(b);
  if (ka < kb)
    return Ordering::LT;
  if (kb < ka)
    return Ordering::GT;
  return Ordering::EQ;
}

Ordering cmp_path(const std::vector<Leaf::Digit> &a, const std::vector<Leaf::Digit> &b) {
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    auto c = cmp_digit(a[j], b[j]);
    if (c != Ordering::EQ)
      return c;
  }
  return cmp_int((long long)a.size(), (long long)b.size());
}

// x built over root A, compared against a different root B > A
bool below_other_root(const std::vector<Leaf::Digit> &path, int level_b) {
  if (path.empty())
    return true;
  Leaf::Digit s{false, level_b, 0};
  auto c = cmp_digit(path[0], s);
  if (c == Ordering::LT)
    return true;
  // A(+^L) <= B by minimality; distinct atoms never coincide
  return c == Ordering::EQ && path.size() == 1;
}

Ordering flip(Ordering o) {
  return o == Ordering::LT ? Ordering::GT : (o == Ordering::GT ? Ordering::LT : o);
}

} // namespace

Ordering compare(const Leaf &a, const Leaf &b) {
  if (a == b)
    return Ordering::EQ;
  Leaf ra = a.root(), rb = b.root();
  if (ra == rb)
    return cmp_path(a.digits(), b.digits());
  if (ra.concrete() && rb.concrete())
    return compare(ra.index(), rb.index());
  if (ra.concrete())
    return Ordering::LT;
  if (rb.concrete())
    return Ordering::GT;
  if (ra.rank() == rb.rank())
    throw IncomparableError("atoms share rank: " + render(ra) + ", " + render(rb));
  if (ra.rank() > rb.rank())
    return flip(compare(b, a));
  if (below_other_root(a.digits(), rb.level()))
    return Ordering::LT;
  throw IncomparableError("cannot order " + render(a) + " against " + render(b) +
                          " under generic spacing");
}

Ordering compare(const Term &a, const Term &b) {
  if (a.kind() == Term::Kind::Leaf && b.kind() == Term::Kind::Leaf)
    return compare(a.as_leaf(), b.as_leaf());
  if (a.kind() == Term::Kind::Nat && b.kind() == Term::Kind::Nat) {
    const Nat &x = a.nat_value(), &y = b.nat_value();
    return x < y ? Ordering::LT : (x > y ? Ordering::GT : Ordering::EQ);
  }
  auto ma = a.monomials(), mb = b.monomials();
  for (std::size_t j = 0; j < ma.size() && j < mb.size(); ++j) {
    auto c = compare(ma[j].exp, mb[j].exp);
    if (c != Ordering::EQ)
      return c;
    if (ma[j].coeff != mb[j].coeff)
      return ma[j].coeff < mb[j].coeff ? Ordering::LT : Ordering::GT;
  }
  return cmp_int((long long)ma.size(), (long long)mb.size());
}

// ---- arithmetic ----

Term add(const Term &a, const Term &b) {
  if (b.is_zero())
    return a;
  if (a.is_zero())
    return b;
  auto ma = a.monomials(), mb = b.monomials();
  const Term &lead = mb[0].exp;
  std::vector<Monomial> out;
  for (const auto &m : ma) {
    auto c = compare(m.exp, lead);
    if (c == Ordering::GT) {
      out.push_back(m);
    } else {
      if (c == Ordering::EQ)
        mb[0].coeff += m.coeff;
      break;
    }
  }
  out.insert(out.end(), mb.begin(), mb.end());
  return Term::from_monomials(std::move(out));
}

Term mul_nat(const Term &a, const Nat &n) {
  if (n == 0 || a.is_zero())
    return Term();
  auto ma = a.monomials();
  ma[0].coeff *= n;
  return Term::from_monomials(std::move(ma));
}

Term mul(const Term &a, const Term &b) {
  if (a.is_zero() || b.is_zero())
    return Term();
  auto ma = a.monomials();
  const Term &a1 = ma[0].exp;
  Term out;
  for (const auto &m : b.monomials()) {
    if (m.exp.is_zero())
      out = add(out, mul_nat(a, m.coeff));
    else
      out = add(out, Term::from_monomials({{add(a1, m.exp), m.coeff}}));
  }
  return out;
}

Term omega_pow(const Term &a) {
  if (a.kind() == Term::Kind::Leaf)
    return a;
  return Term::from_monomials({{a, 1}});
}

Flags classify(const Term &a) {
  Flags f;
  f.is_zero = a.is_zero();
  if (f.is_zero)
    return f;
  auto ms = a.monomials();
  f.is_successor = ms.back().exp.is_zero();
  f.is_limit = !f.is_successor;
  f.is_principal = ms.size() == 1 && ms[0].coeff == 1;
  f.is_epsilon = a.kind() == Term::Kind::Leaf;
  return f;
}

void sort_leaves_desc(std::vector<Leaf> &v) {
  std::sort(v.begin(), v.end(), [](const Leaf &x, const Leaf &y) { return x > y; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

namespace {
void collect_leaves(const Term &x, std::vector<Leaf> &out) {
  if (x.kind() == Term::Kind::Leaf) {
    out.push_back(x.as_leaf());
    return;
  }
  if (x.kind() != Term::Kind::Cnf)
    return;
  for (const auto &m : x.monomials())
    collect_leaves(m.exp, out);
}
} // namespace

std::vector<Leaf> ep_set(const Term &x) {
  std::vector<Leaf> out;
  collect_leaves(x, out);
  sort_leaves_desc(out);
  return out;
}

Term omega_tower(const Leaf &e, int k) {
  if (k < 0)
    throw DomainError("tower height must be >= 0");
  Term t = add(Term::leaf(e), Term::nat(1));
  for (int j = 0; j < k; ++j)
    t = omega_pow(t);
  return t;
}

Term leading_principal(const Term &t) {
  if (t.is_zero())
    return t;
  if (t.kind() == Term::Kind::Leaf)
    return t;
  return Term::from_monomials({{t.monomials()[0].exp, 1}});
}

bool is_concrete(const Term &t) {
  for (const auto &e : ep_set(t))
    if (!e.concrete())
      return false;
  return true;
}

int term_depth(const Term &t) {
  switch (t.kind()) {
  case Term::Kind::Zero:
  case Term::Kind::Nat:
  case Term::Kind::Leaf:
    return 1;
  case Term::Kind::Cnf: {
    int d = 0;
    for (const auto &m : t.monomials())
      d = std::max(d, term_depth(m.exp));
    return d + 1;
  }
  }
  return 1;
}

// ---- atoms ----

const AtomDecl &AtomTable::declare(const std::string &name, int level) {
  if (find(name))
    throw DomainError("atom already declared: " + name);
  if (level < 1)
    throw DomainError("atom level must be >= 1: " + name);
  atoms_.push_back({name, level, (int)atoms_.size()});
  return atoms_.back();
}

const AtomDecl *AtomTable::find(const std::string &name) const {
  for (const auto &a : atoms_)
    if (a.name == name)
      return &a;
  return nullptr;
}

Leaf AtomTable::leaf(const std::string &name) const {
  const AtomDecl *a = find(name);
  if (!a)
    throw DomainError("undeclared atom: " + name);
  return Leaf::atom(a->name, a->level, a->rank);
}

} // namespace ordwb
