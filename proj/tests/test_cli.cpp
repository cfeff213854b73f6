#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "groupoidal/backends.hpp"
#include "groupoidal/cli.hpp"
#include "groupoidal/fixtures.hpp"
#include "json.hpp"

using namespace groupoidal;
namespace fx = groupoidal::fixtures;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string models(const std::string& f) { return slurp(std::string(GROUPOIDAL_MODELS) + "/" + f); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::SyntaxError;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Env env_of(const std::string& text) { return build_env(parse_syntax(text)); }

bool status_consistent(const Report& r) {
  bool all = true;
  for (const auto& f : r.findings) all = all && f.pass;
  return r.status == (all ? "pass" : "fail");
}

}  // namespace

TEST_CASE("fixture model has four declarations") {
  ModelFile m = parse_model(models("fixtures.gm"));
  REQUIRE(m.decls.size() == 4);
  CHECK(m.decls[0].kind == "finset");
  CHECK(m.decls[2].kind == "map");
  CHECK(m.decls[3].form == "cech");
  CHECK(m.decls[2].line == 4);
  Env env = build_env(m);
  CHECK(std::get<Groupoid>(env.get("C2")) == fx::CECH2());
  CHECK(std::get<Mor>(env.get("p2")) == fx::p2());
}

TEST_CASE("example model evaluates") {
  Env env = build_env(parse_model(models("example.gm")));
  CHECK(std::get<Bibundle>(env.get("E")) == fx::EQ23());
  CHECK(std::get<Obj>(env.get("SIER")) == fx::SIER());
  CHECK(is_free(std::get<Action>(env.get("A"))));
  BibundleClass c = classify(std::get<Bibundle>(env.get("X")));
  CHECK(c.is_functor);
  CHECK_FALSE(c.is_equivalence);
  // builtins stay visible next to the declarations
  CHECK(std::holds_alternative<Bibundle>(env.get("EX2")));
}

TEST_CASE("duplicate names are positioned resolution errors") {
  std::string text = "finset A = {x}\nfinset A = {y}\n";
  CHECK(kind_of([&] { parse_model(text); }) == ErrorKind::UnresolvedName);
  std::string msg = message_of([&] { parse_model(text); });
  CHECK(msg.find("line 2, col 1") != std::string::npos);
  CHECK(msg.find("'A'") != std::string::npos);
  // shadowing a builtin is allowed once
  CHECK_NOTHROW(parse_model("finset S2 = {u, v}\n"));
}

TEST_CASE("a map missing an image names the element") {
  std::string text = "finset A = {x, y}\nfinset B = {z}\nmap f : A -> B { x -> z }\n";
  CHECK(kind_of([&] { parse_model(text); }) == ErrorKind::SyntaxError);
  std::string msg = message_of([&] { parse_model(text); });
  CHECK(msg.find("'y'") != std::string::npos);
  CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
  std::string msg = message_of([] { parse_syntax("finset A = {x, y}\n\nfinset B = {a b}\n"); });
  CHECK(msg.find("SyntaxError") == 0);
  CHECK(msg.find("line 3, col 15") != std::string::npos);
  CHECK(kind_of([] { parse_syntax("funset A = {x}"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_syntax("finset A = {x"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_syntax("map f : A - B {}"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_syntax("finset A = {\"x}"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("comments and line breaks are layout only") {
  ModelFile a = parse_syntax("finset A = {x, y}  # two points\nmap f : A -> A { x -> y, y -> x }\n");
  ModelFile b = parse_syntax("# header\nfinset A =\n  {x,\n   y}\nmap f : A -> A {\n  x -> y,   # swap\n  y -> x\n}\n");
  CHECK(a == b);
}

TEST_CASE("resolution and boundary errors") {
  CHECK(kind_of([] { parse_model("groupoid G = cech(nope)"); }) == ErrorKind::UnresolvedName);
  CHECK(kind_of([] { parse_model("groupoid G = cech(S2)"); }) == ErrorKind::TypeMismatch);
  CHECK(kind_of([] { parse_model("groupoid G = frob(S2)"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_model("groupoid G = cech(p2, p3)"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] {
    parse_model("finset B = {u}\nmap q : S2 -> B { a -> u, b -> u }\nbibundle E = equiv(p2, q)");
  }) == ErrorKind::BoundaryMismatch);
  CHECK(kind_of([] { parse_model("bibundle C = compose(EQ23, EX2)"); }) == ErrorKind::MiddleMismatch);
  CHECK(kind_of([] { parse_model("action A = right Z2 on S2 anchor p3 {}"); }) == ErrorKind::BoundaryMismatch);
  CHECK(kind_of([] { parse_model("finspace T = {0, 1} opens {{}, {0}, {2}}"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("table actions match the builtin swap") {
  const std::string o = fx::Z2().G0.id(0);
  std::string text = "finset O = {\"" + o + "\"}\nmap q : S2 -> O { a -> \"" + o + "\", b -> \"" + o +
                     "\" }\naction A = right Z2 on S2 anchor q { a.t -> b, b.t -> a }\n";
  Env env = env_of(text);
  CHECK(std::get<Action>(env.get("A")) == fx::SWAP());
  // the non-unit arrow must be listed
  std::string partial = "finset O = {\"" + o + "\"}\nmap q : S2 -> O { a -> \"" + o + "\", b -> \"" + o +
                        "\" }\naction A = right Z2 on S2 anchor q { a.t -> b }\n";
  std::string msg = message_of([&] { parse_model(partial); });
  CHECK(msg.find("b.t") != std::string::npos);
}

TEST_CASE("round trip on the sample models") {
  for (const char* f : {"fixtures.gm", "example.gm"}) {
    ModelFile m = parse_model(models(f));
    std::string s = serialize(m);
    ModelFile back = parse_model(s);
    CHECK(back == m);
    CHECK(serialize(back) == s);
  }
}

TEST_CASE("round trip on generated declarations") {
  std::mt19937 rng(7);
  const std::vector<std::string> atoms = {"a", "b", "x1", "*", "a|b", "(a|b)|c", "has space", "q\"t", "p.q", "-", "_"};
  auto pick = [&] { return atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)]; };
  auto some = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::string> v(std::uniform_int_distribution<std::size_t>(lo, hi)(rng));
    for (auto& s : v) s = pick();
    return v;
  };
  const std::vector<std::string> kinds = {"finset", "finspace", "map", "groupoid", "action", "bibundle",
                                          "anafunctor", "simplex"};
  for (int round = 0; round < 300; ++round) {
    ModelFile m;
    for (int k = 0; k < 5; ++k) {
      Decl d;
      d.kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
      d.name = pick();
      if (d.kind == "finset") {
        d.elems = some(0, 4);
      } else if (d.kind == "finspace") {
        d.elems = some(0, 3);
        for (std::size_t i = 0, n = std::uniform_int_distribution<std::size_t>(0, 3)(rng); i < n; ++i)
          d.opens.push_back(some(0, 3));
      } else if (d.kind == "map") {
        d.args = some(2, 2);
        for (std::size_t i = 0, n = std::uniform_int_distribution<std::size_t>(0, 3)(rng); i < n; ++i)
          d.entries.push_back(some(2, 2));
      } else if (d.kind == "action" && rng() % 2) {
        d.form = rng() % 2 ? "right" : "left";
        d.args = some(3, 3);
        for (std::size_t i = 0, n = std::uniform_int_distribution<std::size_t>(0, 3)(rng); i < n; ++i)
          d.entries.push_back(some(3, 3));
      } else {
        d.form = pick();
        if (d.form == "right" || d.form == "left") d.form = "unit";
        d.args = some(0, 3);
      }
      m.decls.push_back(d);
    }
    ModelFile back = parse_syntax(serialize(m));
    REQUIRE(back == m);
  }
}

TEST_CASE("equiv C2 PT passes through the cover bibundle") {
  Env env = build_env(parse_model(models("fixtures.gm")));
  Report r = run_command("equiv", {"C2", "PT"}, env);
  CHECK(r.status == "pass");
  CHECK(r.exit_code() == 0);
  const Finding* cls = nullptr;
  for (const auto& f : r.findings)
    if (f.check == "equiv.classify") cls = &f;
  REQUIRE(cls);
  CHECK(cls->pass);
  CHECK(cls->ref.find("principal") != std::string::npos);
  // the same verdict as the library on the dual of the fixture
  CHECK(classify(dual(fx::EX2())).is_equivalence);
  CHECK(status_consistent(r));
}

TEST_CASE("equiv between Cech groupoids of the same base") {
  Env env = build_env(parse_model(models("example.gm")));
  Report r = run_command("equiv", {"C2", "C3"}, env);
  CHECK(r.status == "pass");
  Report one = run_command("equiv", {"E"}, env);
  CHECK(one.status == "pass");
  Report x = run_command("equiv", {"X"}, env);
  CHECK(x.status == "fail");
  CHECK(x.exit_code() == 1);
  Report none = run_command("equiv", {"Z2", "Z4"}, env);
  CHECK(none.status == "fail");
}

TEST_CASE("orbit SWAP has a one-point base and a cover") {
  Report r = run_command("orbit", {"SWAP"}, Env{});
  CHECK(r.status == "pass");
  // the base has one class; it is named by its least member
  Coequalizer q = orbit_space(fx::SWAP());
  REQUIRE(q.quotient.size() == 1);
  CHECK(r.findings[0].witness == q.quotient.show());
  CHECK(r.findings[1].check == "orbit.cover");
  CHECK(r.findings[1].pass);
}

TEST_CASE("axioms --backend finset --max 3 all pass") {
  RunOptions o;
  o.cap = 3;
  Report r = run_command("axioms", {}, Env{}, o);
  CHECK(r.status == "pass");
  CHECK(r.findings.size() >= 5);
  AxiomReport direct = axiom_harness(finset_sample(3));
  std::size_t required = 0;
  for (const auto& c : direct.checks) required += c.required;
  CHECK(r.findings.size() == required);
}

TEST_CASE("compose, decompose, nerve, validate") {
  Env env = env_of("bibundle D = dual(EQ23)\nbibundle U = unit(Z2)\nsimplex P = point(Z4)\n");
  CHECK(run_command("compose", {"EQ23", "D"}, env).status == "pass");
  Report d = run_command("decompose", {"U"}, env);
  CHECK(d.status == "pass");
  // K for the unit bibundle of Z2: one orbit of Z2 on itself, two arrows
  CHECK(d.findings[1].witness == "1 objects, 2 arrows");
  Report n = run_command("nerve", {"EQ23", "D", "EQ23"}, env);
  CHECK(n.status == "pass");
  std::size_t unique = 0;
  for (const auto& f : n.findings) unique += f.check.rfind("nerve.unique-filler", 0) == 0 && f.pass;
  CHECK(unique == 2);
  CHECK(run_command("nerve", {"P"}, env).status == "pass");
  CHECK(run_command("nerve", {"EQ23", "D"}, env).status == "pass");
  CHECK(run_command("validate", {"PT", "p2", "CECH3", "SWAP", "EQ23", "P"}, env).status == "pass");
}

TEST_CASE("validate reports failures without throwing") {
  Action a = fx::SWAP();
  std::vector<int> t = a.mult.table();
  for (std::size_t k = 0; k < t.size(); ++k)
    if (a.g.G1.id(a.arrow(static_cast<int>(k))) != "t") t[k] = 1 - t[k];  // units now swap
  a.mult = Mor(a.mult.dom(), a.mult.cod(), t);
  Env env;
  env.put("BAD", a);
  Report r = run_command("validate", {"BAD"}, env);
  CHECK(r.status == "fail");
  CHECK(status_consistent(r));
  CHECK(r.exit_code() == 1);
}

TEST_CASE("errors map to exit code 2") {
  Env env;
  CHECK(kind_of([&] { run_command("frobnicate", {"PT"}, env); }) == ErrorKind::UnknownCommand);
  CHECK(kind_of([&] { run_command("orbit", {"EQ23"}, env); }) == ErrorKind::TypeMismatch);
  CHECK(kind_of([&] { run_command("compose", {"EQ23"}, env); }) == ErrorKind::TypeMismatch);
  CHECK(kind_of([&] { run_command("orbit", {"missing"}, env); }) == ErrorKind::UnresolvedName);
  Report r = execute("frobnicate", {}, env);
  CHECK(r.status == "error");
  CHECK(r.exit_code() == 2);
  CHECK(execute("compose", {"EQ23", "EX2"}, env).exit_code() == 2);
}

TEST_CASE("json report layout") {
  Report r = run_command("orbit", {"SWAP"}, Env{});
  auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["command"] == "orbit");
  CHECK(j["status"] == "pass");
  REQUIRE(j["findings"].size() == r.findings.size());
  for (const auto& f : j["findings"]) {
    CHECK(f.contains("check-id"));
    CHECK(f.contains("ref"));
    CHECK((f["result"] == "pass" || f["result"] == "fail"));
    CHECK(f.contains("witness"));
  }
  auto e = nlohmann::json::parse(to_json(execute("orbit", {"nope"}, Env{})));
  CHECK(e["status"] == "error");
  CHECK(e["error"].get<std::string>().find("nope") != std::string::npos);
  std::string text = to_text(r);
  CHECK(text.rfind("orbit: pass\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(1 + r.findings.size() + r.notes.size()));
}

TEST_CASE("cap precedence") {
  CHECK(effective_cap(std::nullopt, nullptr) == 4);
  CHECK(effective_cap(std::nullopt, "") == 4);
  CHECK(effective_cap(std::nullopt, "2") == 2);
  CHECK(effective_cap(3, "2") == 3);
  CHECK(kind_of([] { effective_cap(std::nullopt, "two"); }) == ErrorKind::SyntaxError);
}
