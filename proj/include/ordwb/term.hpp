#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordwb {

using Nat = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string &msg, std::size_t p)
      : std::runtime_error(msg + " at " + std::to_string(p)), pos(p) {}
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when two leaves cannot be ordered from the generic-spacing rules.
struct IncomparableError : DomainError {
  using DomainError::DomainError;
};

enum class Ordering { LT = -1, EQ = 0, GT = 1 };

class Term;
struct LeafNode;
struct TermNode;

class Leaf {
public:
  enum class Kind { Conc, Atom, Succ, Canon };

  static Leaf eps(const Term &index);
  static Leaf atom(const std::string &name, int level, int rank);
  // base(+^k); eps(g)(+^1) folds to eps(g+1)
  static Leaf succ(const Leaf &base, int k);
  // x_k(i, base), i >= 2; lies in (base, base(+^i)) and has level i-1
  static Leaf canon(int i, const Leaf &base, int k);

  Kind kind() const;
  int level() const;
  const Term &index() const;      // Conc
  const std::string &name() const; // Atom
  int rank() const;               // Atom
  int k() const;                  // Succ, Canon
  int i() const;                  // Canon
  const Leaf &base() const;       // Succ, Canon

  bool concrete() const;
  // root of the Succ/Canon construction chain
  Leaf root() const;

  struct Digit {
    bool canon;
    int i; // S: k, C: i
    int k;
    bool operator==(const Digit &) const = default;
  };
  std::vector<Digit> digits() const;

  // true when this leaf is `anc` followed by a (possibly empty) digit path;
  // the path is written to `tail` if given
  bool descends_from(const Leaf &anc, std::vector<Digit> *tail = nullptr) const;
  Leaf with_root_replaced(const Leaf &anc, const Leaf &repl) const;

  bool operator==(const Leaf &o) const;
  bool operator!=(const Leaf &o) const { return !(*this == o); }

private:
  std::shared_ptr<const LeafNode> p_;
  Leaf() = default;
  explicit Leaf(std::shared_ptr<const LeafNode> p) : p_(std::move(p)) {}
  friend struct LeafNode;
  friend struct TermNode;
};

struct Monomial;

class Term {
public:
  enum class Kind { Zero, Nat, Cnf, Leaf };

  Term(); // zero
  static Term nat(const Nat &n);
  static Term nat(long long n) { return nat(Nat(n)); }
  static Term leaf(const Leaf &e);
  static Term omega();
  // builds the normal form from strictly decreasing monomials
  static Term from_monomials(std::vector<Monomial> ms);

  Kind kind() const;
  bool is_zero() const { return kind() == Kind::Zero; }
  const Nat &nat_value() const;
  const Leaf &as_leaf() const;
  // uniform view: Nat n -> [(0,n)], Leaf e -> [(e,1)]
  std::vector<Monomial> monomials() const;

  bool operator==(const Term &o) const;
  bool operator!=(const Term &o) const { return !(*this == o); }

private:
  std::shared_ptr<const TermNode> p_;
  explicit Term(std::shared_ptr<const TermNode> p) : p_(std::move(p)) {}
};

struct Monomial {
  Term exp; // a Leaf exponent e denotes e itself (omega^e = e)
  Nat coeff;
};

struct LeafNode {
  Leaf::Kind kind;
  Term index;
  std::string name;
  int level = 1;
  int rank = 0;
  int i = 0;
  int k = 0;
  Leaf base;
};

struct TermNode {
  Term::Kind kind;
  Nat n;
  std::vector<Monomial> monos;
  Leaf leaf;
};

Ordering compare(const Term &a, const Term &b);
Ordering compare(const Leaf &a, const Leaf &b);

inline bool operator<(const Term &a, const Term &b) { return compare(a, b) == Ordering::LT; }
inline bool operator>(const Term &a, const Term &b) { return compare(a, b) == Ordering::GT; }
inline bool operator<=(const Term &a, const Term &b) { return compare(a, b) != Ordering::GT; }
inline bool operator>=(const Term &a, const Term &b) { return compare(a, b) != Ordering::LT; }
inline bool operator<(const Leaf &a, const Leaf &b) { return compare(a, b) == Ordering::LT; }
inline bool operator>(const Leaf &a, const Leaf &b) { return compare(a, b) == Ordering::GT; }
inline bool operator<=(const Leaf &a, const Leaf &b) { return compare(a, b) != Ordering::GT; }

Term add(const Term &a, const Term &b);
Term mul(const Term &a, const Term &b);
Term omega_pow(const Term &a);
Term mul_nat(const Term &a, const Nat &n);

inline Term operator+(const Term &a, const Term &b) { return add(a, b); }
inline Term operator*(const Term &a, const Term &b) { return mul(a, b); }

struct Flags {
  bool is_zero = false;
  bool is_successor = false;
  bool is_limit = false;
  bool is_principal = false;
  bool is_epsilon = false;
};
Flags classify(const Term &a);

// epsilon leaves of the normal form, decreasing, no duplicates
std::vector<Leaf> ep_set(const Term &x);
void sort_leaves_desc(std::vector<Leaf> &v);

Term omega_tower(const Leaf &e, int k);
// leading additive-principal summand; zero for zero
Term leading_principal(const Term &t);
bool is_concrete(const Term &t);
int term_depth(const Term &t);

struct AtomDecl {
  std::string name;
  int level;
  int rank;
};

class AtomTable {
public:
  // ranks follow declaration order
  const AtomDecl &declare(const std::string &name, int level);
  const AtomDecl *find(const std::string &name) const;
  const std::vector<AtomDecl> &atoms() const { return atoms_; }
  Leaf leaf(const std::string &name) const;

private:
  std::vector<AtomDecl> atoms_;
};

Term parse_ord(const std::string &text, const AtomTable *atoms = nullptr);
Leaf parse_leaf(const std::string &text, const AtomTable *atoms = nullptr);
std::string render(const Term &t);
std::string render(const Leaf &e);

} // namespace ordwb
