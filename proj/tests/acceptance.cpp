// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "bibundle_oracles.hpp"
#include "groupoidal/backends.hpp"
#include "groupoidal/nerve.hpp"

using namespace groupoidal;
using namespace groupoidal::fixtures;
using namespace oracle;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void need(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string count(const char* label, std::size_t n) { return std::string(label) + "=" + std::to_string(n); }

// ---- 1: pretopology axioms

Outcome axioms() {
  Outcome o;
  AxiomReport fs = axiom_harness(finset_sample(3));
  AxiomReport ft = axiom_harness(fintop_sample(3));
  for (const AxiomReport* r : {&fs, &ft})
    for (const auto& c : r->checks)
      if (c.required) o.need(c.pass, std::string(backend_name(r->backend)) + " " + c.id + ": " + c.witness);
  const AxiomCheck* sat = ft.find("saturated");
  o.need(sat && !sat->pass && !sat->witness.empty(), "no saturation failure witness in FinTop");
  const AxiomCheck* fsat = fs.find("saturated");
  o.need(fsat && fsat->pass, "FinSet saturation should hold");
  if (o.ok)
    o.detail = count("finset_instances", fs.evaluated) + " " + count("fintop_instances", ft.evaluated) +
               " saturation witness: " + sat->witness.substr(0, 60);
  return o;
}

// ---- 2: unit and inverse from the multiplication

Outcome units_from_multiplication() {
  Outcome o;
  std::vector<Groupoid> gs{pair_groupoid(carrier(1, "o")), pair_groupoid(carrier(2, "o")),
                           pair_groupoid(carrier(3, "o")), cyclic_group(2), cyclic_group(3), cyclic_group(4)};
  std::size_t literal = 0;
  for (const auto& g : gs) {
    Groupoid d = from_multiplication(g.G0, g.G1, g.r, g.s, g.m);
    o.need(d.u == g.u && d.i == g.i, "recovered u, i differ on a groupoid with " + std::to_string(g.arrows()) + " arrows");
    int n0 = int(g.objects()), n1 = int(g.arrows());
    auto unit_ok = [&](int x, int e) {
      if (g.r(e) != x || g.s(e) != x) return false;
      for (int a = 0; a < n1; ++a) {
        if (g.r(a) == x && g.mul(e, a) != a) return false;
        if (g.s(a) == x && g.mul(a, e) != a) return false;
      }
      return true;
    };
    auto inv_ok = [&](int a, int b) {
      return g.s(b) == g.r(a) && g.r(b) == g.s(a) && g.mul(a, b) == g.u(g.r(a)) && g.mul(b, a) == g.u(g.s(a));
    };
    // the conditions split by object and by arrow, so the solution count is a product
    std::size_t units = 1, invs = 1;
    for (int x = 0; x < n0; ++x) {
      std::size_t c = 0;
      for (int e = 0; e < n1; ++e) c += unit_ok(x, e);
      units *= c;
    }
    for (int a = 0; a < n1; ++a) {
      std::size_t c = 0;
      for (int b = 0; b < n1; ++b) c += inv_ok(a, b);
      invs *= c;
    }
    o.need(units == 1 && invs == 1, "alternative unit or inverse found");
    // and literally over every table where that is small
    std::size_t tables = 1;
    for (int k = 0; k < n1; ++k) tables *= std::size_t(n1);
    if (tables <= 1000000) {
      ++literal;
      std::size_t lu = 0, li = 0;
      for_each_table(std::size_t(n0), std::size_t(n1), [&](const std::vector<int>& t) {
        bool ok = true;
        for (int x = 0; x < n0 && ok; ++x) ok = unit_ok(x, t[std::size_t(x)]);
        lu += ok;
        return true;
      });
      for_each_table(std::size_t(n1), std::size_t(n1), [&](const std::vector<int>& t) {
        bool ok = true;
        for (int a = 0; a < n1 && ok; ++a) ok = inv_ok(a, t[std::size_t(a)]);
        li += ok;
        return true;
      });
      o.need(lu == 1 && li == 1, "table enumeration found alternatives");
    }
  }
  if (o.ok) o.detail = count("groupoids", gs.size()) + " " + count("enumerated_by_table", literal);
  return o;
}

// ---- 3: basic iff free

Outcome basic_iff_free() {
  Outcome o;
  std::vector<Groupoid> gs{cyclic_group(2), pair_groupoid(carrier(1, "o")), pair_groupoid(carrier(2, "o")),
                           pair_groupoid(carrier(3, "o"))};
  std::size_t total = 0, basic = 0;
  for (const auto& g : gs)
    for (std::size_t n = 0; n <= 3; ++n)
      for (Side side : {Side::Right, Side::Left})
        for (const Action& a : all_actions(g, carrier(n), side)) {
          ++total;
          bool b = is_basic(a).flag;
          basic += b;
          o.need(b == free_action(a), "basic and free disagree on an action on " + std::to_string(n) + " points");
        }
  o.need(basic > 0 && basic < total, "battery does not separate basic from non-basic");
  if (o.ok) o.detail = count("actions", total) + " " + count("basic", basic);
  return o;
}

// ---- 4: Cech groupoid actions are basic and pulled back from the base

Outcome cech_actions(const Sample& s, std::size_t& covers, std::size_t& actions, Outcome o) {
  for (const Mor& p : s.maps) {
    if (!is_cover(p)) continue;
    ++covers;
    Groupoid C = cech_groupoid(p);
    for (const Obj& Y : s.objects) {
      for (const Action& y : all_actions(C, Y, Side::Left)) {
        ++actions;
        o.need(is_basic(y).flag, "a left action is not basic");
      }
      for (const Action& y : all_actions(C, Y, Side::Right)) {
        ++actions;
        o.need(is_basic(y).flag, "a right action is not basic");
        auto rc = reconstruct_cech_action(p, y);
        o.need(is_iso(rc.iso) && is_gmap(y, rc.pulled.bundle.action, rc.iso) &&
                   compose(rc.pulled.fp->pr2, rc.iso) == y.anchor,
               "reconstruction is not an iso over the base");
      }
    }
  }
  return o;
}

Outcome cech_basic() {
  std::size_t covers = 0, actions = 0;
  Outcome o = cech_actions(finset_sample(3), covers, actions, {});
  std::size_t set_covers = covers, set_actions = actions;
  o = cech_actions(fintop_sample(3), covers, actions, o);
  if (o.ok)
    o.detail = "finset " + count("covers", set_covers) + " " + count("actions", set_actions) + "; fintop " +
               count("covers", covers - set_covers) + " " + count("actions", actions - set_actions);
  return o;
}

// ---- 5: three equivalence tests agree

Outcome equivalence_agreement() {
  Outcome o;
  Functor collapse{CECH2(), point(), p2(), to_terminal(CECH2().G1, PT())};
  Functor z2_point{Z2(), point(), to_terminal(Z2().G0, PT()), to_terminal(Z2().G1, PT())};
  Groupoid discrete2 = unit_groupoid(S2());
  Functor pick_a = unit_at(discrete2, "a");
  std::vector<Functor> functors{collapse, z2_point, group_hom(Z4(), Z2(), {0, 1, 0, 1}), unit_at(CECH2(), "a"),
                                unit_at(Z2(), "*"), pick_a, identity_functor(Z4())};
  std::vector<std::pair<Bibundle, int>> battery;  // -1: no functor oracle
  for (const auto& G : {point(), Z2(), CECH2(), Z4()}) battery.push_back({unit_bibundle(G), -1});
  for (const auto& x : {EX2(), dual(EX2()), EQ23(), dual(EQ23())}) battery.push_back({x, -1});
  for (const auto& F : functors) battery.push_back({functor_to_bibundle(F).bib, es(F) && ff(F)});
  std::size_t yes = 0, no = 0;
  for (const auto& [x, expect] : battery) {
    bool cls = classify(x).is_equivalence;
    Anafunctor a = bibundle_to_anafunctor(x).ana;
    bool ana = is_ana_equivalence(a).flag;
    bool qi = find_quasi_inverse(a, 4).has_value();
    o.need(cls == ana && ana == qi, "tests disagree on a bibundle with " + std::to_string(x.X().size()) + " elements");
    if (expect >= 0) o.need(cls == bool(expect), "functor bibundle disagrees with es and ff");
    (cls ? yes : no)++;
  }
  o.need(yes > 0 && no > 0, "battery has only one verdict");
  if (o.ok) o.detail = count("equivalences", yes) + " " + count("non_equivalences", no);
  return o;
}

// ---- 6: beta round trips

Outcome beta_round_trips() {
  Outcome o;
  Functor collapse{CECH2(), point(), p2(), to_terminal(CECH2().G1, PT())};
  std::vector<Bibundle> bs{unit_bibundle(Z2()), unit_bibundle(CECH2()), unit_bibundle(Z4()), EX2(), dual(EX2()),
                           EQ23(), dual(EQ23()), functor_to_bibundle(collapse).bib,
                           functor_to_bibundle(unit_at(Z2(), "*")).bib, cover_equivalence(p3())};
  std::size_t fx = 0, pairs = 0;
  for (const auto& x : bs) {
    if (!classify(x).is_functor) continue;
    ++fx;
    BiMap m = beta_counit(x);
    o.need(validate_bimap(m).ok() && is_iso(m.f) && m.to == x, "beta counit is not an iso onto x");
  }
  std::vector<Groupoid> gs{Z2(), Z4(), CECH2()};
  for (const auto& G : gs)
    for (const auto& H : gs)
      for (const auto& K : gs)
        for (const auto& F2 : all_functors(G, H))
          for (const auto& F1 : all_functors(H, K)) {
            ++pairs;
            BiMap m = functor_composite_iso(F2, F1);
            o.need(validate_bimap(m).ok() && is_iso(m.f), "composite map is not an iso");
            o.need(m.to == functor_to_bibundle(compose_functors(F1, F2)).bib, "target is not the composite functor bibundle");
            o.need(bool(find_bimap_iso(m.from, compose_bibundles(functor_to_bibundle(F2).bib,
                                                                  functor_to_bibundle(F1).bib).bib)),
                   "source is not the bibundle composite");
          }
  o.need(fx > 0 && pairs > 0, "empty battery");
  if (o.ok) o.detail = count("functor_bibundles", fx) + " " + count("functor_pairs", pairs);
  return o;
}

// ---- 7: pentagon and triangle

Bibundle empty_bibundle(const Groupoid& G, const Groupoid& H) {
  Obj E = carrier(0);
  return make_bibundle(all_actions(G, E, Side::Left).front(), all_actions(H, E, Side::Right).front());
}

std::vector<Bibundle> chain_battery() {
  Functor collapse{CECH2(), point(), p2(), to_terminal(CECH2().G1, PT())};
  Functor z2_point{Z2(), point(), to_terminal(Z2().G0, PT()), to_terminal(Z2().G1, PT())};
  return {unit_bibundle(point()),
          unit_bibundle(Z2()),
          unit_bibundle(CECH2()),
          EX2(),
          dual(EX2()),
          functor_to_bibundle(unit_at(Z2(), "*")).bib,
          functor_to_bibundle(unit_at(CECH2(), "a")).bib,
          functor_to_bibundle(collapse).bib,
          functor_to_bibundle(z2_point).bib,
          swap_actor(),
          actor_bibundle(trivial_actor(Z2())),
          dual(functor_to_bibundle(unit_at(Z2(), "*")).bib),
          dual(swap_actor()),
          empty_bibundle(Z2(), Z2())};
}

bool composable(const Bibundle& x, const Bibundle& y) { return x.h() == y.g() && free_action(x.right); }

struct Triple {
  Composite xy, xy_z, yz, x_yz;
  BiMap a;
};
Triple triple(const Bibundle& x, const Bibundle& y, const Bibundle& z) {
  Composite xy = compose_bibundles(x, y), yz = compose_bibundles(y, z);
  Composite xy_z = compose_bibundles(xy.bib, z), x_yz = compose_bibundles(x, yz.bib);
  BiMap a = associator(xy, xy_z, yz, x_yz);
  return {xy, xy_z, yz, x_yz, a};
}

Outcome coherence() {
  Outcome o;
  auto bs = chain_battery();
  for (const auto& b : bs) o.need(b.X().size() <= 4, "battery carrier above 4");
  auto id = [](const Bibundle& x) { return Mor::identity(x.X()); };
  std::size_t pent = 0, tri = 0;
  for (const auto& w : bs)
    for (const auto& x : bs) {
      if (!composable(w, x)) continue;
      for (const auto& y : bs) {
        if (!composable(x, y)) continue;
        for (const auto& z : bs) {
          if (!composable(y, z)) continue;
          ++pent;
          Triple wxy = triple(w, x, y), xyz = triple(x, y, z);
          Composite wx_y__z = compose_bibundles(wxy.xy_z.bib, z);
          Composite w_xy__z = compose_bibundles(wxy.x_yz.bib, z);
          Composite xy_z = compose_bibundles(xyz.xy.bib, z);
          Composite w__xy_z = compose_bibundles(w, xyz.xy_z.bib);
          Composite w__x_yz = compose_bibundles(w, xyz.x_yz.bib);
          Composite wx__yz = compose_bibundles(wxy.xy.bib, xyz.yz.bib);
          BiMap l1 = horizontal(wx_y__z, w_xy__z, wxy.a.f, id(z));
          BiMap l2 = associator(wxy.x_yz, w_xy__z, xy_z, w__xy_z);
          BiMap l3 = horizontal(w__xy_z, w__x_yz, id(w), xyz.a.f);
          BiMap r1 = associator(wxy.xy_z, wx_y__z, xyz.yz, wx__yz);
          BiMap r2 = associator(wxy.xy, wx__yz, xyz.x_yz, w__x_yz);
          for (const BiMap* m : {&l1, &l2, &l3, &r1, &r2}) o.need(validate_bimap(*m).ok(), "invalid pentagon edge");
          o.need(compose(l3.f, compose(l2.f, l1.f)) == compose(r2.f, r1.f), "pentagon does not commute");
        }
      }
    }
  for (const auto& x : bs)
    for (const auto& y : bs) {
      if (!composable(x, y)) continue;
      ++tri;
      Triple t = triple(x, unit_bibundle(x.h()), y);
      Composite xy = compose_bibundles(x, y);
      BiMap lhs = horizontal(t.x_yz, xy, id(x), left_unitor(t.yz).f);
      BiMap rhs = horizontal(t.xy_z, xy, right_unitor(t.xy).f, id(y));
      o.need(validate_bimap(lhs).ok() && validate_bimap(rhs).ok(), "invalid triangle edge");
      o.need(compose(lhs.f, t.a.f) == rhs.f, "triangle does not commute");
    }
  o.need(pent > 0 && tri > 0, "no composable chains");
  if (o.ok) o.detail = count("pentagons", pent) + " " + count("triangles", tri);
  return o;
}

// ---- 8: actor decomposition

Outcome actor_decomposition() {
  Outcome o;
  std::vector<Bibundle> bs{unit_bibundle(Z2()), unit_bibundle(Z4()), unit_bibundle(CECH2()),
                           actor_bibundle(identity_actor(Z2())), actor_bibundle(identity_actor(CECH2()))};
  std::string z2;
  for (const auto& x : bs) {
    ActorDecomposition d = decompose_actor(x);
    std::vector<std::pair<int, int>> rel;
    const FibreProduct& P = *d.pairs;
    for (int k = 0; k < int(P.size()); ++k)
      for (int h = 0; h < int(x.h().arrows()); ++h) {
        auto [a, b] = P.pairs[std::size_t(k)];
        int j = P.find(x.ract(a, h), x.ract(b, h));
        if (j >= 0) rel.emplace_back(k, j);
      }
    o.need(d.k.objects() == orbit_count(x.right) && d.k.arrows() == classes(P.size(), rel), "K differs from the orbit count");
    o.need(validate_groupoid(d.k).ok() && validate_actor(d.actor).ok() && classify(d.equiv).is_equivalence,
           "decomposition pieces invalid");
    o.need(validate_bimap(d.iso).ok() && is_iso(d.iso.f) && d.iso.to == x, "recomposition is not an iso onto x");
    if (x.h() == Z2() && x == unit_bibundle(Z2())) {
      o.need(d.k.objects() == 1 && d.k.arrows() == 2, "K for Z2 is not one object with two arrows");
      z2 = std::to_string(d.k.objects()) + "/" + std::to_string(d.k.arrows());
    }
  }
  if (o.ok) o.detail = count("actors", bs.size()) + " K(Z2) objects/arrows=" + z2;
  return o;
}

// ---- 9: imprimitivity on Z4 with {0, 2}

Outcome imprimitivity_z4() {
  Outcome o;
  Groupoid Z = Z4();
  Groupoid H = group_groupoid({"0", "2"}, {{0, 1}, {1, 0}});
  Mor c = Mor::constant(Z.G1, H.G0, 0);
  Action l = make_action(H, c, Side::Left, [&](int x, int h) { return Z.mul(2 * h, x); });
  Action r = make_action(H, c, Side::Right, [&](int x, int h) { return Z.mul(x, 2 * h); });
  Imprimitivity im = imprimitivity(make_bibundle(l, r));
  for (const Groupoid* g : {&im.left_groupoid, &im.right_groupoid})
    o.need(g->objects() == 2 && g->arrows() == 4 && validate_groupoid(*g).ok(), "transformation groupoid shape");
  o.need(validate_bibundle(im.equiv).ok(), "not a bibundle");
  o.need(classify(im.equiv).is_equivalence, "not classified as an equivalence");
  o.need(flags(im.equiv).equivalence, "principality oracle rejects it");
  if (o.ok) o.detail = "2 objects, 4 arrows on both sides; carrier " + std::to_string(im.equiv.X().size());
  return o;
}

// ---- 10: nerve horns

std::vector<Bibundle> nerve_battery() {
  Functor collapse{CECH2(), point(), p2(), to_terminal(CECH2().G1, PT())};
  return {unit_bibundle(point()), unit_bibundle(Z2()), unit_bibundle(CECH2()), EX2(), dual(EX2()),
          functor_to_bibundle(unit_at(Z2(), "*")).bib, functor_to_bibundle(unit_at(CECH2(), "a")).bib,
          functor_to_bibundle(collapse).bib, cover_equivalence(p3()), dual(cover_equivalence(p3())), EQ23(),
          dual(EQ23())};
}

// change one entry of f so that the result differs; nullopt if the codomain is a point
std::optional<Mor> nudge(const Mor& f, std::size_t at) {
  if (f.cod().size() < 2 || f.dom().size() == 0) return std::nullopt;
  std::vector<int> t = f.table();
  std::size_t k = at % t.size();
  t[k] = (t[k] + 1) % int(f.cod().size());
  return Mor::trusted(f.dom(), f.cod(), t);
}

Outcome nerve_horns() {
  Outcome o;
  auto bs = nerve_battery();
  std::size_t twos = 0, threes = 0, corrupted = 0;
  for (const auto& a : bs)
    for (const auto& b : bs) {
      if (!(a.h() == b.g())) continue;
      ++twos;
      o.need(validate_simplex(horn_fill_inner2(a, b)).ok(), "a 2-horn filler does not validate");
    }
  const std::array<std::array<int, 3>, 2> inner{std::array<int, 3>{0, 1, 3}, std::array<int, 3>{0, 2, 3}};
  for (const auto& a : bs)
    for (const auto& b : bs) {
      if (!(a.h() == b.g())) continue;
      for (const auto& c : bs) {
        if (!(b.h() == c.g())) continue;
        NSimplex x = chain_simplex({a, b, c});
        if (!validate_simplex(x).ok()) {
          o.need(false, "a fixture chain simplex is invalid");
          continue;
        }
        ++threes;
        for (auto miss : inner) {
          FillerSearch f = unique_inner3_check(x, miss);
          o.need(f.fillers.size() == 1 && f.fillers.front() == x.m.at(miss), "inner 3-horn without a unique filler");
        }
        // corruptions that break the given faces
        for (std::size_t at = 0; at < 2; ++at) {
          if (auto s = nudge(x.ss(0, 3), at)) {
            NSimplex bad = x;
            bad.s.insert_or_assign({0, 3}, *s);
            for (auto miss : inner) {
              ++corrupted;
              o.need(unique_inner3_check(bad, miss).fillers.empty(), "a corrupted s_03 still has a filler");
            }
          }
          if (auto m = nudge(x.mm(0, 1, 2), at)) {
            NSimplex bad = x;
            bad.m.insert_or_assign({0, 1, 2}, *m);
            bool broken = true;
            try {
              broken = !validate_simplex(restrict_simplex({0, 1, 2}, bad)).ok();
            } catch (const Error&) {
            }
            if (!broken) continue;
            for (auto miss : inner) {
              ++corrupted;
              o.need(unique_inner3_check(bad, miss).fillers.empty(), "a corrupted m_012 still has a filler");
            }
          }
        }
      }
    }
  o.need(twos > 0 && threes > 0 && corrupted > 0, "empty battery");
  if (o.ok) o.detail = count("two_horns", twos) + " " + count("three_simplices", threes) + " " + count("corrupted", corrupted);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "pretopology axioms, FinSet <= 3 and FinTop <= 3 points, saturation witness", 60, axioms},
      {2, "unit and inverse recovered from the multiplication, uniquely", 10, units_from_multiplication},
      {3, "Z/2 and pair groupoid actions on <= 3 elements: basic iff free", 30, basic_iff_free},
      {4, "Cech groupoid actions basic and reconstructed from the base", 120, cech_basic},
      {5, "ana-equivalence, bibundle equivalence and quasi-inverse search agree", 300, equivalence_agreement},
      {6, "beta round trips and functor composites", 120, beta_round_trips},
      {7, "pentagon and triangle on composable chains with carriers <= 4", 120, coherence},
      {8, "actor decomposition recomposes; K for Z/2 has 1 object and 2 arrows", 10, actor_decomposition},
      {9, "imprimitivity for Z/4 with {0, 2}", 10, imprimitivity_z4},
      {10, "nerve: 2-horn fillers validate, inner 3-horns have unique fillers", 60, nerve_horns},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.limit_s;
    bool pass = o.ok && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, c.limit_s);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << timing
              << (in_time ? "" : " exceeded") << "]  " << o.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
