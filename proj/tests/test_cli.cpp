#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "ordwb/session.hpp"
#include "run_cli.hpp"

using namespace ordwb;
using cli::quote;
namespace fs = std::filesystem;

static std::string script(std::initializer_list<std::string> lines) {
  std::string s;
  for (auto l : lines)
    s += l + "\n";
  return s;
}

TEST_CASE("session commands") {
  Session s;
  CHECK(s.run_command("eval w^(eps(0))+1") == "eps(0)+1");
  CHECK(s.run_command("eval w^( eps(0) ) + 1   # spaces and a comment") == "eps(0)+1");
  CHECK(s.run_command("tset 1 eps(0) eps(0)*2+w") == "{eps(0)}");
  CHECK(s.run_command("  # only a comment") == "");
  CHECK(s.run_command("declare A 2") == "A@2: chain {A@2, A@2(+1)}");
  CHECK(s.run_command("lambda 2 A@2(+1)") == "A@2");
  CHECK(s.run_command("lambda 2 eps(4)") == "-inf");
  CHECK(s.run_command("gmap 1 eps(3) eps(1) eps(3)+eps(0)") == "eps(1)+eps(0)");
  CHECK(s.run_command("grid g eps(1) eps(0) eps(0)*2+1") == "g: 31 points, 3 rounds, subset cap 4");
  CHECK(s.run_command("leq1 g eps(0) eps(0)*2") == "true (grid-relative)");
  CHECK(s.run_command("leq1 g eps(0) eps(0)*2+1") == "false (grid-relative)");
  CHECK(s.run_command("mhat g eps(0)") == "eps(0)*2");
  CHECK(s.run_command("classdetect g 1") == "{eps(0)}");
  CHECK(s.run_command("eta 1 eps(0) eps(0)*2+w in g") == "eps(0)*2+w");
}

TEST_CASE("session errors") {
  Session s;
  CHECK_THROWS_AS(s.run_command("frob 1"), CommandParseError);
  CHECK_THROWS_AS(s.run_command("tset 1 eps(0)"), CommandParseError);
  CHECK_THROWS_AS(s.run_command("lambda x eps(0)"), CommandParseError);
  CHECK_THROWS_AS(s.run_command("eta 1 eps(0) eps(0) in nowhere"), DomainError);
  CHECK_THROWS_AS(s.run_command("declare 9x 2"), DomainError);
  CHECK_THROWS_AS(s.run_command("declare A 0"), DomainError);
  try {
    s.run_command("tset 1 eps(0) eps(0)+(");
    FAIL("no error");
  } catch (const ParseError &e) {
    // column of the bad character in the whole line
    CHECK(e.pos >= std::string("tset 1 eps(0) ").size());
  }
  s.run_command("grid g eps(1) eps(0)");
  CHECK_THROWS_AS(s.run_command("grid g eps(1) eps(0)"), DomainError);
  CHECK_THROWS_AS(s.run_command("grid h eps(1) frobs=2"), CommandParseError);
}

TEST_CASE("round trip through eval") {
  gen::Rng rng(91);
  gen::TermGen tg(rng, gen::concrete_leaves(4));
  Session s;
  s.run_command("declare A 2");
  s.run_command("declare K 3");
  for (int i = 0; i < 300; ++i) {
    Term t = tg.term(5);
    std::string once = s.run_command("eval " + render(t));
    CHECK(s.context().parse(once) == t);
    CHECK(s.run_command("eval " + once) == once);
  }
  for (const char *x : {"A@2(+1)", "K@3(+2)(+1)", "cx(2,3,K@3)", "w^(K@3+1)*2+A@2"})
    CHECK(s.run_command(std::string("eval ") + x) == x);
}

TEST_CASE("binary: examples and exit codes") {
  if (!cli::available())
    return;
  auto r = cli::run(quote("eval") + " " + quote("w^(eps(0))+1"));
  CHECK(r.rc == 0);
  CHECK(r.out == "eps(0)+1\n");

  r = cli::run("", script({"tset 1 eps(0) eps(0)*2+w", "grid grid1 eps(1) eps(0) eps(0)*2+1",
                           "leq1 grid1 eps(0) eps(0)*2"}));
  CHECK(r.rc == 0);
  CHECK(r.out == "{eps(0)}\ngrid1: 31 points, 3 rounds, subset cap 4\ntrue (grid-relative)\n");

  r = cli::run("", script({"eval 1", "eval eps(0", "eval 2"}));
  CHECK(r.rc == 2);
  CHECK(r.out == "1\n");
  CHECK(r.err.find("line 2, column") != std::string::npos);

  r = cli::run("", script({"# header", "lambda 2 A@2"}));
  CHECK(r.rc == 1);
  CHECK(r.err.find("line 2:") != std::string::npos);

  CHECK(cli::run("", "bogus\n").rc == 2);
  CHECK(cli::run("--no-such-flag").rc == 2);
  CHECK(cli::run("--format xml eval 1").rc == 2);
  CHECK(cli::run("--script /nonexistent/file").rc == 1);
}

TEST_CASE("binary: context, cache and formats") {
  if (!cli::available())
    return;
  auto d = cli::scratch();
  {
    ClassContext ctx;
    ctx.declare("A", 2);
    ctx.annotate_m(ctx.parse("A@2"), ctx.parse("A@2*2"));
    save_context(ctx, (d / "ctx.json").string());
  }
  auto r = cli::run("--context " + quote((d / "ctx.json").string()) + " " +
                    quote("eta 1 A@2 A@2*2"));
  CHECK(r.rc == 0);
  CHECK(r.out == "A@2*2\n");
  CHECK(cli::run("--context /nonexistent/ctx.json eval 1").rc == 1);

  auto cache_env = d / "cache_env", cache_flag = d / "cache_flag";
  std::string grid = "grid g eps(1) eps(0)\n";
  r = cli::run("", grid, "ORDWB_CACHE_DIR=" + quote(cache_env.string()));
  CHECK(r.rc == 0);
  CHECK(fs::exists(cache_env));
  r = cli::run("--cache-dir " + quote(cache_flag.string()), grid,
               "ORDWB_CACHE_DIR=" + quote((d / "unused").string()));
  CHECK(fs::exists(cache_flag));
  CHECK(!fs::exists(d / "unused"));

  r = cli::run("--format json", script({"grid g eps(1) eps(0) eps(0)*2+1", "export g"}));
  REQUIRE(r.rc == 0);
  auto nl = r.out.find('\n');
  auto first = nlohmann::json::parse(r.out.substr(0, nl));
  CHECK(first["cmd"] == "grid");
  CHECK(first["result"]["points"] == 31);
  auto exported = nlohmann::json::parse(r.out.substr(nl + 1));
  CHECK(exported["points"].size() == 31);

  r = cli::run("--format dot", script({"grid g eps(1) eps(0)", "export g " +
                                                                   (d / "g.dot").string()}));
  CHECK(r.rc == 0);
  CHECK(cli::slurp(d / "g.dot").rfind("digraph leq1 {", 0) == 0);
}

TEST_CASE("binary: json output is reproducible") {
  if (!cli::available())
    return;
  std::string s = script({"declare A 2", "declare K 3", "canon 2 K@3 2", "tset 2 K@3 w^(K@3+1)",
                          "grid g eps(1) eps(0) eps(0)*2+1", "classdetect g 1",
                          "gset 2 eps(0) eps(0)*2 eps(0) in g", "export g"});
  auto a = cli::run("--format json", s), b = cli::run("--format json", s);
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}
