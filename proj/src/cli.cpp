#include "groupoidal/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "groupoidal/backends.hpp"

namespace groupoidal {

namespace {

[[noreturn]] void mismatch(const std::string& cmd, const std::string& name, const Value& v, const char* want) {
  throw Error(ErrorKind::TypeMismatch, cmd + ": '" + name + "' is " + value_kind(v) + ", expected " + want);
}

template <class T>
const T& need(const std::string& cmd, const Env& env, const std::string& name, const char* want) {
  const Value& v = env.get(name);
  if (!std::holds_alternative<T>(v)) mismatch(cmd, name, v, want);
  return std::get<T>(v);
}

void arity(const std::string& cmd, const std::vector<std::string>& names, std::size_t lo, std::size_t hi) {
  if (names.size() < lo || names.size() > hi)
    throw Error(ErrorKind::TypeMismatch, cmd + " takes " + std::to_string(lo) +
                                             (hi != lo ? " to " + std::to_string(hi) : "") + " name" +
                                             (hi == 1 ? "" : "s") + ", got " + std::to_string(names.size()));
}

std::string first_failure(const ValidationReport& r) {
  for (const auto& f : r.findings)
    if (!f.pass) return f.check + (f.witness.empty() ? "" : ": " + f.witness);
  return {};
}

std::string shape(const Groupoid& g) {
  return std::to_string(g.objects()) + " objects, " + std::to_string(g.arrows()) + " arrows";
}

std::string class_line(const BibundleClass& c) {
  std::string out;
  auto flag = [&](const char* n, bool b) { out += std::string(out.empty() ? "" : ", ") + n + "=" + (b ? "yes" : "no"); };
  flag("functor", c.is_functor);
  flag("covering", c.is_covering);
  flag("actor", c.is_actor);
  flag("equivalence", c.is_equivalence);
  return out;
}

void validate_one(Report& rep, const std::string& name, const Value& v) {
  ValidationReport r;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Obj>) {
          r.add("object", "a finite set, or a finite space whose opens are closed under unions and intersections",
                true, x.show());
        } else if constexpr (std::is_same_v<T, Mor>) {
          r.add("map", backend_name(x.dom().backend()) == std::string("FinTop") ? "a continuous map" : "a function",
                true, x.show());
          rep.notes.push_back(name + ": cover=" + (is_cover(x) ? "yes" : "no"));
        } else if constexpr (std::is_same_v<T, Groupoid>) {
          r = validate_groupoid(x);
          rep.notes.push_back(name + ": " + shape(x));
        } else if constexpr (std::is_same_v<T, Action>) {
          ActionCheck c = validate_action(x);
          r = c.report;
          rep.notes.push_back(name + ": sheaf=" + (c.is_sheaf ? "yes" : "no") + ", free=" + (is_free(x) ? "yes" : "no"));
        } else if constexpr (std::is_same_v<T, Bibundle>) {
          r = validate_bibundle(x);
          if (r.ok()) rep.notes.push_back(name + ": " + class_line(classify(x)));
        } else if constexpr (std::is_same_v<T, Anafunctor>) {
          r = validate_anafunctor(x);
        } else {
          r = validate_simplex(x);
        }
      },
      v);
  ValidationReport tagged;
  tagged.merge(r, name);
  for (auto& f : tagged.findings) rep.findings.push_back(std::move(f));
}

std::string surjectivity_witness(const Surjectivity& t) {
  std::string out = t.es_witness;
  if (!t.ff_witness.empty()) out += (out.empty() ? "" : "; ") + t.ff_witness;
  return out;
}

void add(Report& rep, std::string check, std::string ref, bool pass, std::string witness = {}) {
  rep.findings.push_back({std::move(check), std::move(ref), pass, std::move(witness)});
}

void equivalence_checks(Report& rep, const Bibundle& x, std::size_t cap) {
  ValidationReport v = validate_bibundle(x);
  add(rep, "equiv.bibundle", "two commuting actions with invariant anchors", v.ok(), first_failure(v));
  if (!v.ok()) return;
  BibundleClass c = classify(x);
  add(rep, "equiv.classify", "bibundle equivalence: right action principal over G0 along r, left action principal over H0 along s",
      c.is_equivalence, class_line(c));
  if (c.is_functor) {
    Anafunctor a = bibundle_to_anafunctor(x).ana;
    EquivalenceResult e = is_ana_equivalence(a);
    add(rep, "equiv.anafunctor", "the associated anafunctor is essentially surjective and fully faithful", e.flag,
        e.flag ? "" : surjectivity_witness(e.tests));
    auto q = find_quasi_inverse(a, cap);
    add(rep, "equiv.anafunctor-quasi-inverse", "an anafunctor inverse with unit and counit isos exists",
        q.has_value(), q ? "" : "none with carriers up to " + std::to_string(cap));
  } else {
    rep.notes.push_back("not a bibundle functor; anafunctor checks skipped");
  }
  BibundleSearch s = find_bibundle_quasi_inverse(x, cap);
  add(rep, "equiv.bibundle-quasi-inverse", "a bibundle Y with X Y iso to G1 and Y X iso to H1 exists",
      s.inverse.has_value(),
      (s.inverse ? "" : "none with carriers up to " + std::to_string(s.cap) + ", ") + std::to_string(s.examined) + " examined");
  if (c.is_equivalence) {
    InverseIsos iv = check_inverse(x);
    bool ok = validate_bimap(iv.iso1).ok() && validate_bimap(iv.iso2).ok() && is_iso(iv.iso1.f) && is_iso(iv.iso2.f);
    add(rep, "equiv.dual-inverse", "X x_H X* iso to G1 and X* x_G X iso to H1", ok,
        std::to_string(iv.xx.bib.X().size()) + " and " + std::to_string(iv.xx_dual.bib.X().size()) + " elements");
  }
}

// a declared bibundle between a and b, its dual, or one built from a cover
std::optional<std::pair<Bibundle, std::string>> find_between(const Env& env, const Groupoid& a, const Groupoid& b) {
  for (const auto& n : env.names()) {
    const Value& v = env.get(n);
    if (auto x = std::get_if<Bibundle>(&v)) {
      if (x->g() == a && x->h() == b) return std::make_pair(*x, n);
      if (x->g() == b && x->h() == a) return std::make_pair(dual(*x), "dual(" + n + ")");
    }
  }
  std::vector<std::pair<std::string, Mor>> maps;
  for (const auto& n : env.names())
    if (auto p = std::get_if<Mor>(&env.get(n)); p && is_cover(*p)) maps.push_back({n, *p});
  for (const auto& [n, p] : maps) {
    Groupoid c = cech_groupoid(p), base = unit_groupoid(p.cod());
    if (a == base && b == c) return std::make_pair(cover_equivalence(p), "cover(" + n + ")");
    if (a == c && b == base) return std::make_pair(dual(cover_equivalence(p)), "dual(cover(" + n + "))");
  }
  for (const auto& [n, p] : maps)
    for (const auto& [m, q] : maps)
      if (p.cod() == q.cod() && cech_groupoid(p) == a && cech_groupoid(q) == b)
        return std::make_pair(cech_equivalence(p, q), "equiv(" + n + ", " + m + ")");
  return std::nullopt;
}

Report run_equiv(const std::vector<std::string>& names, const Env& env, const RunOptions& o) {
  Report rep;
  arity("equiv", names, 1, 2);
  if (names.size() == 1) {
    const Value& v = env.get(names[0]);
    if (auto x = std::get_if<Bibundle>(&v)) {
      equivalence_checks(rep, *x, o.cap);
    } else if (auto a = std::get_if<Anafunctor>(&v)) {
      ValidationReport r = validate_anafunctor(*a);
      add(rep, "equiv.anafunctor-valid", "cover, pulled-back groupoid and functor are valid", r.ok(), first_failure(r));
      EquivalenceResult e = is_ana_equivalence(*a);
      add(rep, "equiv.anafunctor", "essentially surjective and fully faithful", e.flag,
          e.flag ? "" : surjectivity_witness(e.tests));
      auto q = find_quasi_inverse(*a, o.cap);
      add(rep, "equiv.anafunctor-quasi-inverse", "an anafunctor inverse with unit and counit isos exists",
          q.has_value(), q ? "" : "none with carriers up to " + std::to_string(o.cap));
    } else {
      mismatch("equiv", names[0], v, "a bibundle or an anafunctor");
    }
    return rep;
  }
  Groupoid a = as_groupoid(env.get(names[0]), names[0]), b = as_groupoid(env.get(names[1]), names[1]);
  auto x = find_between(env, a, b);
  if (!x) {
    add(rep, "equiv.bibundle", "a bibundle between the two groupoids is declared or built from a cover", false,
        "none found from " + names[0] + " to " + names[1]);
    return rep;
  }
  rep.notes.push_back("bibundle " + x->second + " with " + std::to_string(x->first.X().size()) + " elements");
  equivalence_checks(rep, x->first, o.cap);
  return rep;
}

Report run_compose(const std::vector<std::string>& names, const Env& env) {
  Report rep;
  arity("compose", names, 2, 2);
  const Bibundle& x = need<Bibundle>("compose", env, names[0], "a bibundle");
  const Bibundle& y = need<Bibundle>("compose", env, names[1], "a bibundle");
  Composite c = compose_bibundles(x, y);
  rep.notes.push_back(std::to_string(c.pairs->size()) + " pairs, " + std::to_string(c.bib.X().size()) + " classes");
  ValidationReport v = validate_bibundle(c.bib);
  add(rep, "compose.bibundle", "the quotient of X x_H Y by the diagonal H-action is a bibundle", v.ok(), first_failure(v));
  if (!v.ok()) return rep;
  BibundleClass cx = classify(x), cy = classify(y), cc = classify(c.bib);
  if (cx.is_functor && cy.is_functor)
    add(rep, "compose.functor", "composites of bibundle functors are bibundle functors", cc.is_functor, class_line(cc));
  if (cx.is_equivalence && cy.is_equivalence)
    add(rep, "compose.equivalence", "composites of bibundle equivalences are bibundle equivalences", cc.is_equivalence,
        class_line(cc));
  if (cx.is_actor && cy.is_actor)
    add(rep, "compose.actor", "composites of bibundle actors are bibundle actors", cc.is_actor, class_line(cc));
  Composite lu = compose_bibundles(unit_bibundle(x.g()), x), ru = compose_bibundles(x, unit_bibundle(x.h()));
  BiMap l = left_unitor(lu), r = right_unitor(ru);
  add(rep, "compose.unitors", "G1 x_G X and X x_H H1 are isomorphic to X",
      validate_bimap(l).ok() && validate_bimap(r).ok() && is_iso(l.f) && is_iso(r.f));
  return rep;
}

Report run_decompose(const std::vector<std::string>& names, const Env& env) {
  Report rep;
  arity("decompose", names, 1, 1);
  const Bibundle& x = need<Bibundle>("decompose", env, names[0], "a bibundle");
  BibundleClass c = classify(x);
  add(rep, "decompose.actor", "the right action is basic and s a cover", c.is_actor, class_line(c));
  if (!c.is_actor) return rep;
  ActorDecomposition d = decompose_actor(x);
  ValidationReport k = validate_groupoid(d.k);
  add(rep, "decompose.k", "K = (X x_{s,s} X)/H over X/H is a groupoid", k.ok(), shape(d.k));
  ValidationReport a = validate_actor(d.actor);
  add(rep, "decompose.g-to-k", "G acts on K by an actor", a.ok(), first_failure(a));
  BibundleClass ce = classify(d.equiv);
  add(rep, "decompose.k-to-h", "X is a bibundle equivalence from K to H", ce.is_equivalence, class_line(ce));
  ValidationReport i = validate_bimap(d.iso);
  add(rep, "decompose.recompose", "K1 x_K X is isomorphic to X as a bibundle", i.ok() && is_iso(d.iso.f),
      std::to_string(d.recomposed.bib.X().size()) + " elements");
  return rep;
}

Report run_orbit(const std::vector<std::string>& names, const Env& env) {
  Report rep;
  arity("orbit", names, 1, 1);
  const Action& a = need<Action>("orbit", env, names[0], "an action");
  BasicResult b = is_basic(a);
  add(rep, "orbit.base", "the orbit space X/G exists as a coequalizer", true, b.orbit.quotient.show());
  add(rep, "orbit.cover", "the projection X -> X/G is a cover", b.orbit.proj_is_cover, b.orbit.proj.show());
  add(rep, "orbit.basic", "the action is principal over its orbit space", b.flag,
      std::string("free=") + (b.free ? "yes" : "no") + (b.flag ? "" : "; " + first_failure(b.report)));
  return rep;
}

Report run_nerve(const std::vector<std::string>& names, const Env& env) {
  Report rep;
  if (names.empty()) throw Error(ErrorKind::TypeMismatch, "nerve takes a simplex or 1 to 3 bibundles");
  NSimplex x;
  bool built = false;
  if (names.size() == 1) {
    const Value& v = env.get(names[0]);
    if (auto s = std::get_if<NSimplex>(&v)) x = *s;
    else if (!std::holds_alternative<Bibundle>(v)) mismatch("nerve", names[0], v, "a simplex or a bibundle");
  }
  if (x.X.empty()) {
    arity("nerve", names, 1, 3);
    std::vector<Bibundle> chain;
    for (const auto& n : names) chain.push_back(need<Bibundle>("nerve", env, n, "a bibundle"));
    x = chain_simplex(chain);
    built = true;
  }
  ValidationReport v = validate_simplex(x);
  for (auto f : v.findings) {
    f.check = "nerve." + f.check;
    rep.findings.push_back(std::move(f));
  }
  rep.notes.push_back(std::to_string(x.n) + "-simplex" + (built ? " from the chain" : ""));
  if (x.n == 2 && built) {
    NSimplex h = horn_fill_inner2(std::get<Bibundle>(env.get(names[0])), std::get<Bibundle>(env.get(names[1])));
    ValidationReport hv = validate_simplex(h);
    add(rep, "nerve.horn-fill[0,1,2]", "the composite fills the inner 2-horn", hv.ok(), first_failure(hv));
  }
  if (x.n == 3 && v.ok()) {
    for (std::array<int, 3> t : {std::array<int, 3>{0, 1, 3}, std::array<int, 3>{0, 2, 3}}) {
      FillerSearch f = unique_inner3_check(x, t);
      std::string id = "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]";
      add(rep, "nerve.unique-filler" + id, "the inner 3-horn has exactly one filler", f.fillers.size() == 1,
          std::to_string(f.fillers.size()) + " fillers of " + std::to_string(f.candidates) + " candidates");
    }
  }
  return rep;
}

Report run_axioms(const std::vector<std::string>& names, const RunOptions& o) {
  Report rep;
  arity("axioms", names, 0, 0);
  Sample s = o.backend == Backend::FinSet ? finset_sample(o.cap) : fintop_sample(o.cap);
  AxiomReport ar = axiom_harness(s);
  rep.notes.push_back(std::string(backend_name(o.backend)) + " sample with carriers up to " + std::to_string(o.cap) +
                      ": " + std::to_string(s.objects.size()) + " objects, " + std::to_string(s.maps.size()) +
                      " maps, " + std::to_string(ar.evaluated) + " instances");
  for (const auto& c : ar.checks) {
    std::string inst = std::to_string(c.instances) + " instances";
    if (c.required)
      add(rep, "axioms." + c.id, c.statement, c.pass, c.pass ? inst : c.witness);
    else
      rep.notes.push_back(c.id + " (informational): " + (c.pass ? "holds, " + inst : "fails: " + c.witness));
  }
  return rep;
}

}  // namespace

std::size_t effective_cap(std::optional<std::size_t> flag, const char* env_value) {
  if (flag) return *flag;
  if (env_value && *env_value) {
    std::size_t used = 0;
    std::string s = env_value;
    try {
      std::size_t v = std::stoul(s, &used);
      if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorKind::SyntaxError, "GROUPOIDAL_MAX must be a number, got '" + s + "'");
  }
  return 4;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> c = {"validate", "compose", "equiv", "decompose", "orbit", "nerve", "axioms"};
  return c;
}

Report run_command(const std::string& cmd, const std::vector<std::string>& names, const Env& env,
                   const RunOptions& opts) {
  Report rep;
  if (cmd == "validate") {
    if (names.empty()) throw Error(ErrorKind::TypeMismatch, "validate takes at least one name");
    for (const auto& n : names) validate_one(rep, n, env.get(n));
  } else if (cmd == "compose") {
    rep = run_compose(names, env);
  } else if (cmd == "equiv") {
    rep = run_equiv(names, env, opts);
  } else if (cmd == "decompose") {
    rep = run_decompose(names, env);
  } else if (cmd == "orbit") {
    rep = run_orbit(names, env);
  } else if (cmd == "nerve") {
    rep = run_nerve(names, env);
  } else if (cmd == "axioms") {
    rep = run_axioms(names, opts);
  } else {
    throw Error(ErrorKind::UnknownCommand, "unknown command '" + cmd + "'");
  }
  rep.command = cmd;
  bool ok = true;
  for (const auto& f : rep.findings) ok = ok && f.pass;
  rep.status = ok ? "pass" : "fail";
  return rep;
}

Report error_report(const std::string& cmd, const std::exception& e) {
  Report rep;
  rep.command = cmd;
  rep.status = "error";
  rep.error = e.what();
  if (auto g = dynamic_cast<const Error*>(&e); g && !g->witness().empty()) rep.error += " [" + g->witness() + "]";
  return rep;
}

Report execute(const std::string& cmd, const std::vector<std::string>& names, const Env& env, const RunOptions& opts) {
  try {
    return run_command(cmd, names, env, opts);
  } catch (const Error& e) {
    return error_report(cmd, e);
  }
}

std::string to_text(const Report& r) {
  std::ostringstream o;
  o << r.command << ": " << r.status << '\n';
  if (!r.error.empty()) o << "  error: " << r.error << '\n';
  for (const auto& f : r.findings) {
    o << "  " << (f.pass ? "PASS " : "FAIL ") << f.check << "  [" << f.ref << "]";
    if (!f.witness.empty()) o << "  " << f.witness;
    o << '\n';
  }
  for (const auto& n : r.notes) o << "  note: " << n << '\n';
  return o.str();
}

std::string to_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["status"] = r.status;
  j["findings"] = nlohmann::json::array();
  for (const auto& f : r.findings)
    j["findings"].push_back({{"check-id", f.check}, {"ref", f.ref}, {"result", f.pass ? "pass" : "fail"},
                             {"witness", f.witness}});
  j["notes"] = r.notes;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump(2) + "\n";
}

}  // namespace groupoidal
