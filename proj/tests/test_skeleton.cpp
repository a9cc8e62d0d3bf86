#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "ordwb/skeleton.hpp"

using namespace ordwb;

static Term P(const char *s) { return parse_ord(s); }
static Leaf E(int i) { return Leaf::eps(Term::nat(i)); }
static Term T(const Leaf &e) { return Term::leaf(e); }

// A, B of level 2 and K, L of level 3, in increasing order
static ClassContext symbolic() {
  ClassContext ctx;
  ctx.declare("A", 2);
  ctx.declare("B", 2);
  ctx.declare("K", 3);
  ctx.declare("L", 3);
  for (const char *n : {"A", "B", "K", "L"})
    chain_down(ctx.atom(n), &ctx);
  return ctx;
}

TEST_CASE("successors and chains") {
  CHECK(class_succ(E(0), 1) == E(1));
  CHECK_THROWS_AS(class_succ(E(0), 2), DomainError);

  ClassContext ctx;
  ctx.declare("A", 3);
  Leaf A = ctx.atom("A");
  Leaf a2 = class_succ(A, 2);
  CHECK(a2.level() == 2);
  CHECK(render(a2) == "A@3(+2)");

  auto ch = chain_down(A, &ctx);
  REQUIRE(ch.size() == 3);
  CHECK(ch[0] == A);
  CHECK(ch[1] == a2);
  CHECK(ch[2] == Leaf::succ(a2, 1));
  for (int j = 0; j < 3; ++j) {
    CHECK(ch[j].level() == 3 - j);
    if (j > 0)
      CHECK(ch[j - 1] < ch[j]);
  }
  Term top = mul_nat(T(ch[2]), 2);
  for (const auto &e : ch)
    CHECK(*ctx.annotated_m(T(e)) == top);
  CHECK(render(*ctx.annotated_m(T(a2))) == "A@3(+2)(+1)*2");

  CHECK(chain_down(E(0)) == std::vector<Leaf>{E(0)});
  // chain_down twice is harmless; a clashing annotation is not
  chain_down(A, &ctx);
  CHECK_THROWS_AS(ctx.annotate_m(T(A), T(A)), DomainError);
  CHECK_THROWS_AS(ctx.annotate_m(P("w^w"), P("w")), DomainError);
}

TEST_CASE("class level and lambda") {
  CHECK(class_level(P("w^w")) == 0);
  CHECK(class_level(P("eps(0)")) == 1);
  ClassContext ctx = symbolic();
  Term a2 = ctx.parse("A@2(+1)");
  CHECK(class_level(ctx.parse("K@3(+2)")) == 2);

  CHECK(lambda_locate(1, P("eps(0)*2")) == E(0));
  CHECK(lambda_locate(2, a2) == ctx.atom("A"));
  CHECK_FALSE(lambda_locate(1, P("w")).has_value());
  CHECK_FALSE(lambda_locate(1, P("0")).has_value());
  CHECK(lambda_locate(1, P("w^(eps(0)+1)+eps(0)")) == E(0));
  CHECK(lambda_locate(1, P("w^w^(eps(2)*3+1)")) == E(2));
  CHECK(lambda_locate(1, P("eps(1)+w")) == E(1));
  CHECK_FALSE(lambda_locate(2, P("eps(4)")).has_value());
  CHECK(lambda_locate(2, ctx.parse("w^(A@2(+1)*2+1)+A@2")) == ctx.atom("A"));
  CHECK(lambda_locate(3, ctx.parse("K@3(+2)(+1)*2")) == ctx.atom("K"));
  CHECK(lambda_locate(2, ctx.parse("cx(3,1,K@3)")) == ctx.parse_leaf("cx(3,1,K@3)"));
  CHECK(lambda_locate(3, ctx.parse("cx(3,1,K@3)+1")) == ctx.atom("K"));
  CHECK(render_lambda(std::nullopt) == "-inf");

  ClassContext c1;
  c1.declare("C", 1);
  CHECK_THROWS_AS(lambda_locate(2, c1.parse("C@1*2")), DomainError);
  CHECK_THROWS_AS(lambda_locate(0, P("1")), DomainError);
}

TEST_CASE("eta and l, structural") {
  ClassContext ctx = symbolic();
  auto src = MSource::structural(ctx);
  Leaf e0 = E(0);
  CHECK(eta_compute(src, 1, e0, P("eps(0)*2")) == P("eps(0)*2"));
  CHECK(l_compute(src, 1, e0, P("eps(0)+5")) == P("eps(0)*2"));
  CHECK(eta_compute(src, 1, e0, P("eps(0)*3+1")) == P("eps(0)*3+1"));
  CHECK(l_compute(src, 1, e0, P("eps(0)*3+1")) == P("eps(0)*3+1"));
  CHECK_THROWS_AS(eta_compute(src, 1, e0, P("w^(eps(0)+1)")), DomainError);
  CHECK_THROWS_AS(eta_compute(src, 1, e0, P("eps(1)")), DomainError);
  CHECK_THROWS_AS(eta_compute(src, 1, e0, P("w")), DomainError);
  CHECK_THROWS_AS(eta_compute(src, 2, e0, P("eps(0)")), DomainError);

  Leaf K = ctx.atom("K");
  Term floor = ctx.parse("K@3(+2)(+1)*2");
  CHECK(eta_floor(K, 3) == floor);
  CHECK(eta_compute(src, 3, K, ctx.parse("K@3(+2)(+1)")) == floor);
  CHECK(eta_compute(src, 3, K, ctx.parse("K@3+5")) == floor);
  Term past = ctx.parse("K@3(+2)(+1)*2+1");
  CHECK(eta_compute(src, 3, K, past) == past);

  // an annotated principal point dominates the interval above it
  ClassContext c2 = ctx;
  auto cp = canonical_point(1, ctx.atom("A"), 2, &c2);
  auto s2 = MSource::structural(c2);
  Term t = add(cp.x, P("5"));
  CHECK(eta_compute(s2, 1, ctx.atom("A"), t) == cp.gamma);
  CHECK(l_compute(s2, 1, ctx.atom("A"), t) == cp.x);
  CHECK(l_compute(s2, 1, ctx.atom("A"), cp.gamma) == cp.x);
  CHECK(eta_compute(s2, 1, ctx.atom("A"), cp.gamma) == cp.gamma);
}

TEST_CASE("eta and l against the grid") {
  GridSpec s;
  s.bound = P("eps(1)");
  s.seeds = {P("eps(0)"), P("eps(0)*2+1")};
  auto g = std::make_shared<const Grid>(build_grid(s));
  auto rel = leq1_fixpoint(g, 4);
  auto src = MSource::oracle(rel);
  Leaf e0 = E(0);
  int ie = g->require(P("eps(0)*2"));
  int checked = 0;
  for (int i = ie + 1; i < (int)g->size(); ++i) {
    Term t = (*g)[i];
    Term eta = eta_compute(src, 1, e0, t);
    Term l = l_compute(src, 1, e0, t);
    CHECK(rel.m_hat(l) == eta);
    CHECK(eta >= t);
    if (g->index_of(eta)) {
      CHECK(eta_compute(src, 1, e0, eta) == eta);
      ++checked;
    }
    CHECK(eta_compute(src, 1, e0, l) == eta);
    bool three = l == P("eps(0)*2") || l == leading_principal(t) || l == t;
    CHECK_MESSAGE(three, render(t), " -> ", render(l));
  }
  CHECK(checked > 5);
  CHECK_THROWS_AS(eta_compute(src, 1, e0, P("eps(0)*5")), DomainError);

  ClassContext ctx = symbolic();
  CHECK_THROWS_AS(eta_compute(src, 1, ctx.atom("A"), ctx.parse("A@2*3")), DomainError);
}

TEST_CASE("canonical points") {
  auto cp = canonical_point(1, E(0), 2, nullptr);
  CHECK(cp.x == P("w^w^(eps(0)+1)"));
  CHECK(cp.x <= cp.gamma);
  CHECK(cp.gamma < mul_nat(cp.x, 2));
  CHECK_THROWS_AS(canonical_point(2, E(0), 1, nullptr), DomainError);
  CHECK_THROWS_AS(canonical_point(1, E(0), 0, nullptr), DomainError);

  ClassContext ctx = symbolic();
  // strictly increasing in k, each with Ep = {e}
  for (const char *n : {"A", "K"}) {
    Leaf e = ctx.atom(n);
    for (int i = 1; i <= e.level(); ++i) {
      Term prev;
      for (int k = 1; k <= 4; ++k) {
        auto c = canonical_point(i, e, k, nullptr);
        CHECK(prev < c.gamma);
        prev = c.gamma;
        REQUIRE(c.ochain.size() == (std::size_t)i);
        CHECK(c.ochain.back() == e);
        CHECK(ep_set(c.gamma) == std::vector<Leaf>{c.ochain.front()});
        for (int j = 0; j + 1 < i; ++j) {
          CHECK(c.ochain[j].level() == j + 1);
          CHECK(c.ochain[j + 1] < c.ochain[j]);
        }
      }
    }
  }
}

TEST_CASE("T-sets") {
  ClassContext ctx = symbolic();
  auto src = MSource::structural(ctx);

  gen::Rng rng(11);
  gen::TermGen tg(rng, gen::concrete_leaves(5));
  for (int n = 0; n < 200; ++n) {
    Term t = tg.term(4);
    CHECK(T_set(src, 1, E(4), t) == ep_set(t));
    CHECK(T_set(src, 1, E(4), add(t, P("1"))) == T_set(src, 1, E(4), t));
  }
  CHECK_THROWS_AS(T_set(src, 1, E(0), P("eps(1)")), DomainError);

  // o-chains of canonical points, levels 2 and 3
  for (const char *n : {"A", "B", "K", "L"}) {
    Leaf e = ctx.atom(n);
    for (int z = 1; z <= 3; ++z) {
      ClassContext c = ctx;
      auto cp = canonical_point(e.level(), e, z, &c);
      auto s = MSource::structural(c);
      auto ts = T_set(s, e.level(), e, cp.gamma);
      CHECK_MESSAGE(ts == cp.ochain, render_set(ts), " vs ", render_set(cp.ochain));
      CHECK(T_set(s, e.level(), e, add(cp.gamma, P("1"))) == ts);
      for (const auto &x : ep_set(cp.gamma))
        CHECK(std::find(ts.begin(), ts.end(), x) != ts.end());
      CHECK_THROWS_AS(T_set(s, e.level(), e, cp.gamma, 0), DomainError);
    }
  }

  // below alpha nothing is expanded
  Leaf K = ctx.atom("K");
  Term low = ctx.parse("B@2*2+A@2");
  CHECK(T_set(src, 3, K, low) == std::vector<Leaf>{ctx.atom("B"), ctx.atom("A")});
  // a chain point's T-set is read off its annotation
  auto ch = chain_down(K);
  auto tk = T_set(src, 3, K, T(ch[1]));
  CHECK(std::find(tk.begin(), tk.end(), ch[1]) != tk.end());
  CHECK(std::find(tk.begin(), tk.end(), ch[2]) != tk.end());
  // missing m is an error, not a guess
  ClassContext bare;
  bare.declare("K", 3);
  CHECK_THROWS_AS(T_set(MSource::structural(bare), 3, bare.atom("K"),
                        bare.parse("K@3(+2)")),
                  DomainError);
}

TEST_CASE("f and S") {
  ClassContext ctx = symbolic();
  auto src = MSource::structural(ctx);
  CHECK(f_and_S(src, 1, E(0), E(3)).f.empty());
  CHECK(f_and_S(src, 1, E(0), E(3)).S.empty());

  Leaf K = ctx.atom("K");
  ClassContext c = ctx;
  auto cp = canonical_point(3, K, 2, &c);
  auto s = MSource::structural(c);
  // f(k+1, o_{k+1})(o_k) = {o_k}
  for (int k = 1; k <= 2; ++k) {
    auto r = f_and_S(s, k + 1, cp.ochain[k], cp.ochain[k - 1]);
    CHECK(r.S.empty());
    CHECK(r.f == std::vector<Leaf>{cp.ochain[k - 1]});
  }

  // hand-built skeleton below A(+2): the chain already fixes m(A(+1)) = A(+1)*2
  ClassContext h = ctx;
  Leaf a1 = h.parse_leaf("A@2(+1)");
  Leaf d1 = h.parse_leaf("A@2(+1)(+1)"), d2 = h.parse_leaf("A@2(+1)(+1)(+1)");
  h.annotate_m(T(d1), mul_nat(T(d1), 3));
  h.annotate_m(T(d2), mul_nat(T(d2), 2));
  auto hs = MSource::structural(h);
  auto r = f_and_S(hs, 2, ctx.atom("A"), d2);
  CHECK(r.S == std::vector<Leaf>{d1, a1});
  CHECK(r.f == std::vector<Leaf>{d2, d1});
  // from d1 the chain point falls short: A(+1)*2 moves to d1*2 < d1*3
  CHECK(f_and_S(hs, 2, ctx.atom("A"), d1).S.empty());
  CHECK_THROWS_AS(f_and_S(hs, 2, ctx.atom("A"), ctx.atom("B")), DomainError);
}

TEST_CASE("g-maps") {
  auto g = g_map(1, E(5), E(2));
  CHECK(g.apply(E(5)) == E(2));
  CHECK(g.apply(E(1)) == E(1));
  CHECK_FALSE(g.in_domain(E(3)));
  CHECK_FALSE(g.in_domain(E(6)));
  auto id = g_map(1, E(4), E(4));
  for (int i = 0; i <= 4; ++i)
    CHECK(id.apply(E(i)) == E(i));

  ClassContext ctx = symbolic();
  Leaf A = ctx.atom("A"), B = ctx.atom("B"), K = ctx.atom("K"), L = ctx.atom("L");
  CHECK_THROWS_AS(g_map(3, A, K), DomainError);

  // g(n, a, c) = g(n, c, a)^-1 and the composition triangle
  auto gKA = g_map(2, K, A), gAK = g_map(2, A, K);
  CHECK(compare_maps(gAK, invert_map(gKA)) == MapOrder::EQ);
  Term t = ctx.parse("w^(K@3(+1)*2+1)+cx(2,3,K@3)+eps(3)");
  Term moved = apply_subst(t, gKA);
  CHECK(moved == ctx.parse("w^(A@2(+1)*2+1)+cx(2,3,A@2)+eps(3)"));
  CHECK(apply_subst(moved, gAK) == t);
  auto tri = compose_maps(g_map(2, B, A), g_map(2, L, B));
  Term u = ctx.parse("w^(L@3(+1)+1)+B@2*2");
  CHECK_THROWS_AS(apply_subst(u, g_map(2, L, A)), DomainError);
  Term v = ctx.parse("w^(L@3(+1)+1)+eps(3)*2");
  CHECK(apply_subst(v, tri) == apply_subst(v, g_map(2, L, A)));

  // gamma transport, levels 1..3
  for (auto [e, a] : {std::pair{A, B}, std::pair{K, L}})
    for (int i = 1; i <= e.level(); ++i)
      for (int j = 1; j <= 4; ++j) {
        auto ce = canonical_point(i, e, j, nullptr), ca = canonical_point(i, a, j, nullptr);
        CHECK(apply_subst(ce.gamma, g_map(i, e, a)) == ca.gamma);
        CHECK(apply_subst(ca.gamma, g_map(i, a, e)) == ce.gamma);
      }
}

TEST_CASE("context files") {
  ClassContext ctx = symbolic();
  canonical_point(2, ctx.atom("K"), 1, &ctx);
  auto j = ctx.to_json();
  CHECK(j["atoms"][0] == nlohmann::json{{"name", "A"}, {"level", 2}});
  auto back = ClassContext::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.n_max() == 3);
  CHECK(back.annotations().size() == ctx.annotations().size());
  CHECK_THROWS_AS(ClassContext::from_json(nlohmann::json{{"atoms", {{{"name", "A"}}}}}),
                  DomainError);
  CHECK_THROWS_AS(ClassContext::from_json(nlohmann::json::parse(
                      R"({"atoms":[{"name":"A","level":2}],"m":[{"x":"A@2","m":"B@2"}]})")),
                  DomainError);
  CHECK_THROWS_AS(load_context("/nonexistent/ctx.json"), DomainError);
}
