#include "ordwb/session.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace ordwb {

using nlohmann::json;

Format parse_format(const std::string &s) {
  if (s == "text")
    return Format::Text;
  if (s == "json")
    return Format::Json;
  if (s == "dot")
    return Format::Dot;
  throw DomainError("unknown format " + s + " (text, json, dot)");
}

std::shared_ptr<const Leq1Relation> Session::grid(const std::string &name) const {
  auto it = grids_.find(name);
  if (it == grids_.end())
    throw DomainError("no grid named " + name);
  return it->second;
}

namespace {

struct Tok {
  std::string s;
  std::size_t col;
};

std::vector<Tok> tokenize(const std::string &line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace((unsigned char)line[i]))
      ++i;
    if (i >= line.size() || line[i] == '#')
      break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace((unsigned char)line[j]))
      ++j;
    out.push_back({line.substr(i, j - i), i});
    i = j;
  }
  return out;
}

struct Result {
  std::string text;
  json data;
};

class Command {
public:
  Command(const std::string &line, const ClassContext &ctx) : line_(line), ctx_(ctx) {
    toks_ = tokenize(line);
    // trailing "in NAME" selects a grid
    if (toks_.size() >= 3 && toks_[toks_.size() - 2].s == "in") {
      grid_ = toks_.back().s;
      toks_.resize(toks_.size() - 2);
    }
  }

  bool empty() const { return toks_.empty(); }
  const std::string &verb() const { return toks_[0].s; }
  std::size_t nargs() const { return toks_.size() - 1; }
  const std::optional<std::string> &grid() const { return grid_; }

  void arity(std::size_t lo, std::size_t hi, const char *usage) const {
    if (nargs() < lo || nargs() > hi)
      throw CommandParseError(std::string("usage: ") + usage, toks_[0].col);
  }
  void no_grid() const {
    if (grid_)
      throw CommandParseError("'" + verb() + "' takes no grid", toks_[0].col);
  }

  const std::string &word(std::size_t i) const { return toks_[i].s; }

  int integer(std::size_t i) const {
    const Tok &t = toks_[i];
    try {
      std::size_t used = 0;
      int v = std::stoi(t.s, &used);
      if (used == t.s.size())
        return v;
    } catch (const std::exception &) {
    }
    throw CommandParseError("expected an integer, got '" + t.s + "'", t.col);
  }

  Term term(std::size_t i) const {
    return located([&] { return ctx_.parse(toks_[i].s); }, toks_[i].col);
  }
  Leaf leaf(std::size_t i) const {
    return located([&] { return ctx_.parse_leaf(toks_[i].s); }, toks_[i].col);
  }
  // everything from argument i to the end of the line (before any comment)
  Term rest(std::size_t i) const {
    std::size_t from = toks_[i].col;
    std::size_t to = toks_.back().col + toks_.back().s.size();
    return located([&] { return ctx_.parse(line_.substr(from, to - from)); }, from);
  }

private:
  const std::string &line_;
  const ClassContext &ctx_;
  std::vector<Tok> toks_;
  std::optional<std::string> grid_;

  template <class F> static auto located(F f, std::size_t col) -> decltype(f()) {
    try {
      return f();
    } catch (const CommandParseError &) {
      throw;
    } catch (const ParseError &e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at "));
      throw CommandParseError(msg, col + e.pos);
    }
  }
};

json terms_json(const std::vector<Term> &v) {
  json j = json::array();
  for (const auto &t : v)
    j.push_back(render(t));
  return j;
}

std::string terms_text(const std::vector<Term> &v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + render(v[i]);
  return s + "}";
}

std::string relation_text(const Leq1Relation &rel) {
  std::string s;
  const Grid &g = rel.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    s += render(g[i]) + " <=_1 up to " + render(g[rel.mhat()[i]]) + "\n";
  return s;
}

} // namespace

std::string Session::run_command(const std::string &line) {
  Command c(line, ctx_);
  if (c.empty())
    return "";
  const std::string &v = c.verb();

  std::shared_ptr<const Leq1Relation> rel;
  if (c.grid())
    rel = grid(*c.grid());
  auto source = [&] { return rel ? MSource::oracle(*rel) : MSource::structural(ctx_); };

  Result r;
  if (v == "declare") {
    c.arity(2, 2, "declare NAME LEVEL");
    c.no_grid();
    const std::string &name = c.word(1);
    bool ok = std::isalpha((unsigned char)name[0]) && name != "w" && name != "eps" && name != "cx";
    for (char ch : name)
      ok = ok && (std::isalnum((unsigned char)ch) || ch == '_');
    if (!ok)
      throw DomainError("bad atom name '" + name + "'");
    ctx_.declare(name, c.integer(2));
    auto chain = chain_down(ctx_.atom(name), &ctx_);
    r.text = render(chain.front()) + ": chain " + render_set(chain);
    r.data = json{{"atom", render(chain.front())}, {"chain", leaves_to_json(chain)}};
  } else if (v == "eval") {
    c.no_grid();
    if (c.nargs() < 1)
      c.arity(1, 1, "eval EXPR");
    Term t = c.rest(1);
    r.text = render(t);
    r.data = json{{"value", r.text}};
  } else if (v == "tset") {
    c.arity(3, 3, "tset N ALPHA T [in GRID]");
    auto ts = T_set(source(), c.integer(1), c.leaf(2), c.term(3));
    r.text = render_set(ts);
    r.data = leaves_to_json(ts);
  } else if (v == "gmap") {
    c.arity(3, 4, "gmap N ALPHA C [T]");
    c.no_grid();
    SubstMap g = g_map(c.integer(1), c.leaf(2), c.leaf(3));
    if (c.nargs() == 4) {
      r.text = render(apply_subst(c.term(4), g));
      r.data = json{{"value", r.text}};
    } else {
      r.data = map_to_json(g);
      r.text = r.data.dump();
    }
  } else if (v == "eta" || v == "ell") {
    c.arity(3, 3, "eta|ell K ALPHA T [in GRID]");
    auto f = v == "eta" ? eta_compute : l_compute;
    r.text = render(f(source(), c.integer(1), c.leaf(2), c.term(3)));
    r.data = json{{"value", r.text}, {"mode", to_string(source().mode())}};
  } else if (v == "lambda") {
    c.arity(2, 2, "lambda J T");
    c.no_grid();
    r.text = render_lambda(lambda_locate(c.integer(1), c.term(2)));
    r.data = json{{"value", r.text}};
  } else if (v == "canon") {
    c.arity(3, 3, "canon I E K [in GRID]");
    auto cp = canonical_point(c.integer(1), c.leaf(2), c.integer(3), rel ? nullptr : &ctx_,
                              rel.get());
    r.text = "x = " + render(cp.x) + "; gamma = " + render(cp.gamma) + "; o-chain " +
             render_set(cp.ochain);
    r.data = json{{"x", render(cp.x)},
                  {"gamma", render(cp.gamma)},
                  {"ochain", leaves_to_json(cp.ochain)}};
  } else if (v == "grid") {
    c.arity(2, 64, "grid NAME default | grid NAME BOUND [SEED...] [rounds=R] [shadows=S]");
    c.no_grid();
    const std::string &name = c.word(1);
    if (grids_.count(name))
      throw DomainError("grid " + name + " already exists");
    GridSpec spec;
    if (c.word(2) == "default") {
      c.arity(2, 2, "grid NAME default");
      spec = default_grid_spec();
    } else {
      spec.bound = c.term(2);
      for (std::size_t i = 3; i <= c.nargs(); ++i) {
        const std::string &w = c.word(i);
        auto eq = w.find('=');
        if (eq == std::string::npos) {
          spec.seeds.push_back(c.term(i));
          continue;
        }
        std::string key = w.substr(0, eq);
        int val;
        try {
          val = std::stoi(w.substr(eq + 1));
        } catch (const std::exception &) {
          throw CommandParseError("bad value in '" + w + "'", 0);
        }
        if (key == "rounds")
          spec.rounds = val;
        else if (key == "shadows")
          spec.shadows = val;
        else
          throw CommandParseError("unknown grid option '" + key + "'", 0);
      }
    }
    spec.cap = opts_.grid_cap;
    auto g = std::make_shared<const Grid>(build_grid(spec));
    auto relation =
        std::make_shared<const Leq1Relation>(leq1_cached(opts_.cache_dir, g, opts_.subset_cap));
    grids_[name] = relation;
    r.text = name + ": " + std::to_string(g->size()) + " points, " +
             std::to_string(relation->stats().rounds) + " rounds, subset cap " +
             std::to_string(opts_.subset_cap);
    r.data = json{{"name", name},
                  {"points", g->size()},
                  {"rounds", relation->stats().rounds},
                  {"subset_cap", opts_.subset_cap},
                  {"key", cache_key(*g, opts_.subset_cap)}};
  } else if (v == "leq1") {
    c.arity(3, 3, "leq1 GRID A B");
    c.no_grid();
    auto g = grid(c.word(1));
    auto a = decide_leq1(MSource::oracle(*g), c.term(2), c.term(3));
    r.text = std::string(a.value ? "true" : "false") + " (" + a.source + ")";
    r.data = json{{"value", a.value}, {"source", a.source}};
  } else if (v == "mhat") {
    c.arity(2, 2, "mhat GRID T");
    c.no_grid();
    r.text = render(grid(c.word(1))->m_hat(c.term(2)));
    r.data = json{{"value", r.text}, {"source", "grid-relative"}};
  } else if (v == "classdetect") {
    c.arity(2, 2, "classdetect GRID J");
    c.no_grid();
    auto ms = class_detect(*grid(c.word(1)), c.integer(2));
    std::vector<Term> pts;
    r.data = json::array();
    for (const auto &m : ms) {
      pts.push_back(m.point);
      r.data.push_back(json{{"point", render(m.point)}, {"chain", terms_json(m.chain)}});
    }
    r.text = terms_text(pts);
  } else if (v == "gset") {
    c.arity(4, 4, "gset N ALPHA T BETA [in GRID]");
    auto gm = G_membership(source(), c.integer(1), c.leaf(2), c.term(3), c.leaf(4));
    if (!gm.contained)
      r.text = "false (T-set not below beta, or beta above alpha)";
    else
      r.text = std::string(gm.member ? "true" : "false") + " (" + gm.leq1->source + ")";
    r.data = to_json(gm);
  } else if (v == "astep") {
    c.arity(4, 64, "astep N ALPHA L BETA... [in GRID]");
    int n = c.integer(1);
    Leaf alpha = c.leaf(2);
    Term l = c.term(3);
    std::vector<Leaf> sample;
    for (std::size_t i = 4; i <= c.nargs(); ++i)
      sample.push_back(c.leaf(i));
    auto src = source();
    auto prev = G_set(src, n, alpha, l, sample);
    auto step = A_successor_step(src, n, alpha, l, prev);
    auto direct = G_set(src, n, alpha, add(l, Term::nat(1)), sample);
    bool agree = step.members == direct.members;
    r.text = "A(l+1) = " + terms_text(step.members) + "; G(l+1) = " +
             terms_text(direct.members) + (agree ? "; agree" : "; MISMATCH") + " [" +
             step.note + "]";
    r.data = json{{"previous", to_json(prev)},
                  {"step", to_json(step)},
                  {"direct", to_json(direct)},
                  {"agree", agree}};
  } else if (v == "export") {
    c.arity(1, 2, "export GRID [FILE]");
    c.no_grid();
    auto g = grid(c.word(1));
    std::string body;
    if (opts_.format == Format::Json)
      body = relation_to_json(*g).dump(1) + "\n";
    else if (opts_.format == Format::Dot)
      body = relation_to_dot(*g);
    else
      body = relation_text(*g);
    if (c.nargs() == 2) {
      std::ofstream out(c.word(2));
      if (!out)
        throw DomainError("cannot write " + c.word(2));
      out << body;
      r.text = "wrote " + c.word(2);
      r.data = json{{"file", c.word(2)}};
    } else {
      if (!body.empty() && body.back() == '\n')
        body.pop_back();
      if (opts_.format != Format::Text)
        return body;
      r.text = body;
      r.data = body;
    }
  } else {
    throw CommandParseError("unknown command '" + v + "'", 0);
  }

  if (opts_.format == Format::Json) {
    json args = json::array();
    for (std::size_t i = 1; i <= c.nargs(); ++i)
      args.push_back(c.word(i));
    json out{{"cmd", v}, {"args", args}, {"result", r.data}};
    if (c.grid())
      out["grid"] = *c.grid();
    return out.dump();
  }
  return r.text;
}

int Session::run_script(std::istream &in, std::ostream &out, std::ostream &err) {
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    try {
      std::string s = run_command(line);
      if (!s.empty())
        out << s << "\n";
    } catch (const ParseError &e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at "));
      err << "error: line " << lineno << ", column " << e.pos + 1 << ": " << msg << "\n";
      return 2;
    } catch (const std::exception &e) {
      err << "error: line " << lineno << ": " << e.what() << "\n";
      return 1;
    }
  }
  out.flush();
  return 0;
}

} // namespace ordwb
