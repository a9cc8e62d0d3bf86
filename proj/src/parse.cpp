#include "ordwb/term.hpp"

#include <cctype>

namespace ordwb {

namespace {

// expr   := term ('+' term)*
// term   := factor ('*' factor)*
// factor := primary ('^' factor)?
// primary:= nat | 'w' | '(' expr ')' | 'eps(' expr ')' | name '@' nat
//         | 'cx(' nat ',' nat ',' expr ')'          followed by '(+' nat ')'*
class Parser {
public:
  Parser(const std::string &s, const AtomTable *atoms) : s_(s), atoms_(atoms) {}

  Term parse_all() {
    Term t = expr();
    skip();
    if (pos_ != s_.size())
      throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return t;
  }

private:
  const std::string &s_;
  const AtomTable *atoms_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_]))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c))
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool peek_word(const char *w) {
    skip();
    std::size_t n = std::char_traits<char>::length(w);
    if (s_.compare(pos_, n, w) != 0)
      return false;
    std::size_t after = pos_ + n;
    while (after < s_.size() && std::isspace((unsigned char)s_[after]))
      ++after;
    return after < s_.size() && s_[after] == '(';
  }

  Nat number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
      ++pos_;
    if (start == pos_)
      throw ParseError("expected number", pos_);
    return Nat(s_.substr(start, pos_ - start));
  }

  int small_number() {
    std::size_t at = pos_;
    Nat n = number();
    if (n > 1000000)
      throw ParseError("index too large", at);
    return n.convert_to<int>();
  }

  Term expr() {
    Term t = term();
    while (peek('+')) {
      ++pos_;
      t = add(t, term());
    }
    return t;
  }

  Term term() {
    Term t = factor();
    while (peek('*')) {
      ++pos_;
      t = mul(t, factor());
    }
    return t;
  }

  Term factor() {
    std::size_t at = pos_;
    bool base_is_w = false;
    skip();
    at = pos_;
    if (pos_ < s_.size() && s_[pos_] == 'w') {
      std::size_t after = pos_ + 1;
      base_is_w = after >= s_.size() || !(std::isalnum((unsigned char)s_[after]) ||
                                          s_[after] == '_' || s_[after] == '@');
    }
    Term base = primary();
    if (peek('^')) {
      if (!base_is_w)
        throw ParseError("only w may be raised to a power", at);
      ++pos_;
      return omega_pow(factor());
    }
    return base;
  }

  Term primary() {
    skip();
    if (pos_ >= s_.size())
      throw ParseError("unexpected end of input", pos_);
    std::size_t at = pos_;
    Term t;
    char c = s_[pos_];
    if (std::isdigit((unsigned char)c)) {
      t = Term::nat(number());
    } else if (c == '(') {
      ++pos_;
      t = expr();
      expect(')');
    } else if (peek_word("eps")) {
      pos_ += 3;
      expect('(');
      Term idx = expr();
      expect(')');
      if (!is_concrete(idx))
        throw ParseError("eps index must not mention atoms", at);
      t = Term::leaf(Leaf::eps(idx));
    } else if (peek_word("cx")) {
      pos_ += 2;
      expect('(');
      int i = small_number();
      expect(',');
      int k = small_number();
      expect(',');
      Term b = expr();
      expect(')');
      if (b.kind() != Term::Kind::Leaf)
        throw ParseError("cx base must be an epsilon leaf", at);
      t = Term::leaf(Leaf::canon(i, b.as_leaf(), k));
    } else if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (pos_ < s_.size() && s_[pos_] == '@') {
        ++pos_;
        int level = small_number();
        const AtomDecl *d = atoms_ ? atoms_->find(name) : nullptr;
        if (!d)
          throw DomainError("undeclared atom: " + name);
        if (d->level != level)
          throw DomainError("atom " + name + " declared with level " +
                            std::to_string(d->level) + ", referenced as @" +
                            std::to_string(level));
        t = Term::leaf(Leaf::atom(d->name, d->level, d->rank));
      } else if (name == "w") {
        t = Term::omega();
      } else {
        throw ParseError("unknown identifier '" + name + "'", start);
      }
    } else {
      throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }
    // postfix successor functional
    while (true) {
      skip();
      std::size_t save = pos_;
      if (pos_ + 1 < s_.size() && s_[pos_] == '(') {
        std::size_t q = pos_ + 1;
        while (q < s_.size() && std::isspace((unsigned char)s_[q]))
          ++q;
        if (q < s_.size() && s_[q] == '+') {
          pos_ = q + 1;
          int k = small_number();
          expect(')');
          if (t.kind() != Term::Kind::Leaf)
            throw ParseError("(+k) applies to epsilon leaves only", save);
          t = Term::leaf(Leaf::succ(t.as_leaf(), k));
          continue;
        }
      }
      break;
    }
    return t;
  }
};

std::string render_exp(const Term &x) {
  switch (x.kind()) {
  case Term::Kind::Nat:
  case Term::Kind::Leaf:
    return render(x);
  default:
    break;
  }
  auto ms = x.monomials();
  if (ms.size() == 1 && ms[0].coeff == 1 && ms[0].exp == Term::nat(1))
    return "w";
  return "(" + render(x) + ")";
}

} // namespace

Term parse_ord(const std::string &text, const AtomTable *atoms) {
  return Parser(text, atoms).parse_all();
}

Leaf parse_leaf(const std::string &text, const AtomTable *atoms) {
  Term t = parse_ord(text, atoms);
  if (t.kind() != Term::Kind::Leaf)
    throw DomainError("not an epsilon leaf: " + render(t));
  return t.as_leaf();
}

std::string render(const Leaf &e) {
  switch (e.kind()) {
  case Leaf::Kind::Conc:
    return "eps(" + render(e.index()) + ")";
  case Leaf::Kind::Atom:
    return e.name() + "@" + std::to_string(e.level());
  case Leaf::Kind::Succ:
    return render(e.base()) + "(+" + std::to_string(e.k()) + ")";
  case Leaf::Kind::Canon:
    return "cx(" + std::to_string(e.i()) + "," + std::to_string(e.k()) + "," + render(e.base()) +
           ")";
  }
  return "?";
}

std::string render(const Term &t) {
  switch (t.kind()) {
  case Term::Kind::Zero:
    return "0";
  case Term::Kind::Nat:
    return t.nat_value().str();
  case Term::Kind::Leaf:
    return render(t.as_leaf());
  case Term::Kind::Cnf:
    break;
  }
  std::string out;
  for (const auto &m : t.monomials()) {
    if (!out.empty())
      out += "+";
    if (m.exp.is_zero()) {
      out += m.coeff.str();
      continue;
    }
    if (m.exp.kind() == Term::Kind::Leaf)
      out += render(m.exp);
    else if (m.exp == Term::nat(1))
      out += "w";
    else
      out += "w^" + render_exp(m.exp);
    if (m.coeff > 1)
      out += "*" + m.coeff.str();
  }
  return out;
}

} // namespace ordwb
