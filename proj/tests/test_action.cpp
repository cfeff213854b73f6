#include <catch_amalgamated.hpp>

#include <set>

#include "groupoidal/fixtures.hpp"
#include "groupoidal/morphism.hpp"

using namespace groupoidal;
using namespace groupoidal::fixtures;

namespace {

Groupoid UPT() { return unit_groupoid(PT()); }

Obj carrier(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("y" + std::to_string(i));
  return Obj::finset(ids);
}

bool bijective(const Mor& f) { return is_injective(f) && is_surjective(f); }

bool is_groupoid_iso(const Functor& F) {
  return validate_functor(F).ok() && bijective(F.F0) && bijective(F.F1);
}

bool isomorphic(const Groupoid& a, const Groupoid& b) {
  if (a.objects() != b.objects() || a.arrows() != b.arrows()) return false;
  for (const Functor& F : all_functors(a, b))
    if (bijective(F.F0) && bijective(F.F1)) return true;
  return false;
}

// oracle: every left action of G on H1 that commutes with right multiplication
std::vector<Action> brute_actors(const Groupoid& G, const Groupoid& H) {
  std::vector<Action> out;
  for (const Action& a : all_actions(G, H.G1, Side::Left))
    if (validate_actor(Actor{G, H, a}).ok()) out.push_back(a);
  return out;
}

std::vector<Mor> sections(const Groupoid& g) {
  std::vector<Mor> out;
  for (const Mor& f : all_maps(g.G0, g.G1))
    if (compose(g.s, f) == Mor::identity(g.G0)) out.push_back(f);
  return out;
}

std::vector<Mor> two_arrows(const Actor& m1, const Actor& m2) {
  std::vector<Mor> out;
  for (const Mor& phi : sections(m1.h))
    if (is_actor_2arrow(m1, m2, phi)) out.push_back(phi);
  return out;
}

// a has an inverse b with b a = id and a b = id exactly
bool actor_invertible(const Actor& a) {
  for (const Actor& b : all_actors(a.h, a.g))
    if (compose_actors(b, a) == identity_actor(a.g) && compose_actors(a, b) == identity_actor(a.h)) return true;
  return false;
}

bool has_invertible_2arrow(const Actor& m1, const Actor& m2) {
  for (const Mor& phi : two_arrows(m1, m2))
    if (ad_bisection(m1.h, phi).is_bisection) return true;
  return false;
}

std::vector<Groupoid> small_battery() { return {UPT(), Z2(), CECH2(), unit_groupoid(S2())}; }

}  // namespace

TEST_CASE("validate_action on fixed tables") {
  auto sw = validate_action(SWAP());
  CHECK(sw.report.ok());
  CHECK(sw.is_sheaf);

  Groupoid P = pair_groupoid(S2());
  auto can = validate_action(canonical_action(P));
  CHECK(can.report.ok());
  CHECK(validate_action(canonical_action(P, Side::Left)).report.ok());

  // everything goes to a: associative, not unital
  Groupoid z = Z2();
  Action bad = make_action(z, Mor::constant(S2(), z.G0, 0), Side::Right, [](int, int) { return 0; });
  auto rep = validate_action(bad).report;
  CHECK_FALSE(rep.ok());
  CHECK(rep.passed("associativity"));
  CHECK_FALSE(rep.passed("unit"));
  CHECK(rep.find("unit")->witness == "b");

  Action half = make_action(z, Mor::constant(S2(), z.G0, 0), Side::Right, [](int x, int g) { return g == 0 ? x : 0; });
  auto hr = validate_action(half).report;
  CHECK_FALSE(hr.passed("associativity"));
  CHECK(hr.find("associativity")->witness == "(b, t, t)");
  CHECK(hr.passed("unit-forms"));

  // anchor not a cover: every element over a
  Groupoid U = unit_groupoid(S2());
  Action one = make_action(U, Mor::constant(PT(), U.G0, 0), Side::Right, [](int x, int) { return x; });
  auto o = validate_action(one);
  CHECK(o.report.ok());
  CHECK_FALSE(o.is_sheaf);
}

TEST_CASE("unit law agrees with its alternative forms") {
  Groupoid z = Z2();
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    Obj X = carrier(n);
    Mor anc = Mor::constant(X, z.G0, 0);
    for_each_table(2 * n, n, [&](const std::vector<int>& t) {
      Action a = make_action(z, anc, Side::Right, [&](int x, int g) { return t[std::size_t(g) * n + std::size_t(x)]; });
      CHECK(validate_action(a).report.passed("unit-forms"));
      ++checked;
      return true;
    });
  }
  CHECK(checked == 1 + 16 + 729);
}

TEST_CASE("all_actions matches a brute-force table scan") {
  Groupoid z = Z2();
  for (std::size_t n = 0; n <= 3; ++n) {
    Obj X = carrier(n);
    Mor anc = Mor::constant(X, z.G0, 0);
    std::size_t brute = 0;
    for_each_table(2 * n, n, [&](const std::vector<int>& t) {
      Action a = make_action(z, anc, Side::Right, [&](int x, int g) { return t[std::size_t(g) * n + std::size_t(x)]; });
      brute += validate_action(a).report.ok();
      return true;
    });
    // involutions on n points: 1, 1, 2, 4
    const std::size_t inv[] = {1, 1, 2, 4};
    CHECK(brute == inv[n]);
    CHECK(all_actions(z, X, Side::Right).size() == brute);
    CHECK(all_actions(z, X, Side::Left).size() == brute);
  }
  // every enumerated action validates, both sides, several groupoids
  for (const Groupoid& G : {CECH2(), pair_groupoid(S3()), Z4()}) {
    for (std::size_t n = 1; n <= 3; ++n)
      for (Side side : {Side::Left, Side::Right})
        for (const Action& a : all_actions(G, carrier(n), side)) CHECK(validate_action(a).report.ok());
  }
  // Z4 on n points: homomorphisms into S_n
  CHECK(all_actions(Z4(), carrier(3), Side::Right).size() == 4);
}

TEST_CASE("transformation groupoids") {
  Groupoid T = transformation_groupoid(SWAP());
  CHECK(validate_groupoid(T).ok());
  CHECK(T.arrows() == 4);
  CHECK(isomorphic(T, pair_groupoid(S2())));

  Groupoid z = Z2();
  Action triv = make_action(z, Mor::identity(z.G0), Side::Right, [](int x, int) { return x; });
  Groupoid Tz = transformation_groupoid(triv);
  CHECK(validate_groupoid(Tz).ok());
  CHECK(isomorphic(Tz, z));

  for (const Groupoid& G : {CECH2(), Z4(), pair_groupoid(S3())}) {
    for (Side side : {Side::Right, Side::Left}) {
      Action c = canonical_action(G, side);
      Groupoid TG = transformation_groupoid(c);
      CHECK(validate_groupoid(TG).ok());
      // the arrow coordinate is an isomorphism onto G
      std::vector<int> f1(TG.arrows());
      for (int k = 0; k < int(TG.arrows()); ++k) f1[std::size_t(k)] = c.arrow(k);
      CHECK(is_groupoid_iso(Functor{TG, G, Mor::identity(G.G0), Mor(TG.G1, G.G1, f1)}));
    }
  }
  // left and right variants validate on every small action
  for (std::size_t n = 1; n <= 3; ++n)
    for (Side side : {Side::Right, Side::Left})
      for (const Action& a : all_actions(CECH2(), carrier(n), side)) CHECK(validate_groupoid(transformation_groupoid(a)).ok());
}

TEST_CASE("anchor is the only G-map to the objects") {
  for (const Groupoid& G : {Z2(), CECH2(), pair_groupoid(S3())}) {
    Action target = canonical_action(G);
    for (std::size_t n = 0; n <= 3; ++n)
      for (const Action& a : all_actions(G, carrier(n), Side::Right)) {
        auto maps = all_gmaps(a, target);
        REQUIRE(maps.size() == 1);
        CHECK(maps[0] == a.anchor);
      }
  }
}

TEST_CASE("action fibre products") {
  Action sw = SWAP();
  Groupoid z = sw.g;
  Action pt = canonical_action(z);
  GMap f{sw, pt, sw.anchor};
  auto prod = action_fibre_product(f, f);
  CHECK(prod.action.X.size() == 4);
  CHECK(validate_action(prod.action).report.ok());
  CHECK(is_free(prod.action));
  CHECK(validate_gmap(prod.pr1).ok());
  CHECK(validate_gmap(prod.pr2).ok());
  int ab = prod.fp->at(0, 1);
  CHECK(prod.action.act(ab, 1) == prod.fp->at(1, 0));

  // f = id on both legs: the diagonal
  GMap id{sw, sw, Mor::identity(sw.X)};
  auto diag = action_fibre_product(id, id);
  CHECK(diag.action.X.size() == 2);
  CHECK(validate_gmap(GMap{diag.action, sw, diag.fp->pr1}).ok());
  CHECK(is_iso(diag.fp->pr1));

  // universal property against every G-map pair out of small actions
  for (const auto& [l, r] : {std::pair{f, f}, std::pair{id, id}}) {
    auto P = action_fibre_product(l, r);
    for (std::size_t n = 0; n <= 3; ++n)
      for (const Action& w : all_actions(z, carrier(n), Side::Right)) {
        auto into = all_gmaps(w, P.action);
        for (const Mor& h1 : all_gmaps(w, l.from))
          for (const Mor& h2 : all_gmaps(w, r.from)) {
            if (compose(l.f, h1) != compose(r.f, h2)) continue;
            std::size_t hits = 0;
            for (const Mor& k : into) hits += compose(P.fp->pr1, k) == h1 && compose(P.fp->pr2, k) == h2;
            CHECK(hits == 1);
          }
      }
  }
}

TEST_CASE("actions of a transformation groupoid") {
  std::vector<Action> bases = {SWAP(), canonical_action(CECH2())};
  for (const Action& x : bases) {
    Groupoid T = transformation_groupoid(x);
    for (std::size_t n = 1; n <= 3; ++n) {
      Obj Y = carrier(n);
      for (const Action& y : all_actions(T, Y, Side::Right)) {
        Action r = restrict_to_groupoid(y, x);
        REQUIRE(validate_action(r).report.ok());
        CHECK(is_gmap(r, x, y.anchor));
        CHECK(extend_to_transformation(r, x, y.anchor) == y);
        Functor F = nested_transformation_iso(y, x, r);
        CHECK(is_groupoid_iso(F));
        for (const Mor& f : all_maps(Y, S2())) CHECK(is_invariant(y, f) == is_invariant(r, f));
      }
      for (const Action& g : all_actions(x.g, Y, Side::Right))
        for (const Mor& f : all_gmaps(g, x)) CHECK(restrict_to_groupoid(extend_to_transformation(g, x, f), x) == g);
    }
  }
}

TEST_CASE("left and right conversion") {
  for (const Groupoid& G : {Z2(), Z4(), CECH2(), pair_groupoid(S3())}) {
    for (std::size_t n = 1; n <= 3; ++n)
      for (Side side : {Side::Right, Side::Left}) {
        auto acts = all_actions(G, carrier(n), side);
        for (const Action& a : acts) {
          Action c = convert(a);
          CHECK(c.side != a.side);
          CHECK(validate_action(c).report.ok());
          CHECK(convert(c) == a);
          CHECK(isomorphic(transformation_groupoid(a), transformation_groupoid(c)));
        }
        if (n == 3) continue;
        for (const Action& a : acts)
          for (const Action& b : acts)
            for (const Mor& f : all_maps(a.X, b.X)) CHECK(is_gmap(a, b, f) == is_gmap(convert(a), convert(b), f));
      }
  }
}

TEST_CASE("actor validation") {
  for (const Groupoid& h : small_battery()) {
    CHECK(validate_actor(identity_actor(h)).ok());
    CHECK(validate_actor(trivial_actor(h)).ok());
  }
  CHECK(validate_actor(identity_actor(Z4())).ok());

  // Z2 swapping both coordinates of the pair groupoid on {a, b}
  Groupoid z = Z2();
  Groupoid P = pair_groupoid(S2());
  Action swap2 = make_action(z, Mor::constant(P.G1, z.G0, 0), Side::Left, [&](int h, int g) {
    if (g == 0) return h;
    int x = P.r(h), y = P.s(h);
    return P.G1.find(pair_id(S2().id(1 - x), S2().id(1 - y)));
  });
  REQUIRE(validate_action(swap2).report.ok());
  auto rep = validate_actor(Actor{z, P, swap2});
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.passed("source-invariant"));
  CHECK_FALSE(rep.find("source-invariant")->witness.empty());
}

TEST_CASE("actors against pairs of a base action and a functor") {
  Groupoid z = Z2();
  auto pr = actor_to_pair(identity_actor(z));
  CHECK(pr.base.X.size() == 1);
  CHECK(pr.base.act(0, 1) == 0);
  CHECK(pr.functor.F1.table() == std::vector<int>({0, 1}));

  Groupoid P = pair_groupoid(S2());
  auto tp = actor_to_pair(trivial_actor(P));
  for (int x = 0; x < 2; ++x) CHECK(tp.base.act(x, 0) == x);
  for (int k = 0; k < int(tp.action.arrows()); ++k) CHECK(tp.functor.F1(k) == P.u(tp.base.elem(k)));

  // from a functor invertible on objects
  Groupoid z4 = Z4();
  Functor mod2{z4, z, Mor(z4.G0, z.G0, {0}), Mor(z4.G1, z.G1, {0, 1, 0, 1})};
  Actor af = actor_from_functor(mod2);
  CHECK(validate_actor(af).ok());
  CHECK(af.act.act(0, 1) == 1);
  CHECK(af.act.act(1, 3) == 0);

  // bijection with brute-force actors
  std::vector<Groupoid> gs = small_battery();
  gs.push_back(Z4());
  for (const Groupoid& G : gs)
    for (const Groupoid& H : gs) {
      if (G.arrows() * H.arrows() > 16) continue;
      auto brute = brute_actors(G, H);
      auto viaPairs = all_actors(G, H);
      CHECK(brute.size() == viaPairs.size());
      for (const Actor& a : viaPairs) {
        CHECK(validate_actor(a).ok());
        bool found = false;
        for (const Action& b : brute) found = found || b == a.act;
        CHECK(found);
        auto p = actor_to_pair(a);
        CHECK(validate_action(p.base).report.ok());
        CHECK(validate_functor(p.functor).ok());
        CHECK(pair_to_actor(p.base, p.functor) == a);
      }
    }
}

TEST_CASE("actor_apply and composition") {
  Groupoid z = Z2();
  Groupoid P = pair_groupoid(S2());
  Action lm = multiplication_action(z, Side::Left);
  CHECK(actor_apply(identity_actor(z), lm) == lm);
  CHECK(actor_apply(identity_actor(z), convert(SWAP())) == convert(SWAP()));

  // trivial actor gives the trivial action
  Action t = actor_apply(trivial_actor(z), convert(SWAP()));
  for (int x = 0; x < 2; ++x) CHECK(t.act(x, 0) == x);

  Actor id = identity_actor(z);
  CHECK(compose_actors(id, id) == id);

  std::vector<Groupoid> gs = {UPT(), z, P};
  for (const Groupoid& G : gs)
    for (const Groupoid& H : gs)
      for (const Groupoid& K : gs) {
        auto as = all_actors(G, H);
        auto bs = all_actors(H, K);
        for (const Actor& a : as) {
          CHECK(compose_actors(a, identity_actor(G)) == a);
          CHECK(compose_actors(identity_actor(H), a) == a);
          for (const Actor& b : bs) {
            Actor c = compose_actors(b, a);
            REQUIRE(validate_actor(c).ok());
            // (g h) k = g (h k), and nothing else satisfies it
            auto mixed = [&](const Action& cand) {
              for (std::size_t k = 0; k < a.act.dom->size(); ++k) {
                int g = a.act.arrow(int(k)), h = a.act.elem(int(k)), gh = a.act.mult(int(k));
                for (int kk = 0; kk < int(K.arrows()); ++kk) {
                  int hk = b.act.act(kk, h);
                  if (hk < 0) continue;
                  if (cand.act(hk, g) != b.act.act(kk, gh)) return false;
                }
              }
              return true;
            };
            CHECK(mixed(c.act));
            if (K.arrows() <= 4) {
              std::size_t hits = 0;
              for (const Action& cand : brute_actors(G, K)) hits += mixed(cand);
              CHECK(hits == 1);
            }
            // applying the composite equals applying in turn
            for (std::size_t n = 1; n <= 2; ++n)
              for (const Action& x : all_actions(K, carrier(n), Side::Left)) {
                CHECK(actor_apply(c, x) == actor_apply(a, actor_apply(b, x)));
                for (const Mor& f : all_maps(x.X, S2()))
                  if (is_invariant(x, f)) CHECK(is_invariant(actor_apply(b, x), f));
              }
          }
        }
      }
  CHECK(compose_actors(id, trivial_actor(z)) == trivial_actor(z));
  // trivial after anything acts trivially
  for (const Groupoid& G : gs)
    for (const Actor& a : all_actors(G, UPT())) {
      Actor c = compose_actors(trivial_actor(P), a);
      for (std::size_t k = 0; k < c.act.dom->size(); ++k) CHECK(c.act.mult(int(k)) == c.act.elem(int(k)));
    }
}

TEST_CASE("right H-maps of H1 are left multiplication by sections") {
  for (const Groupoid& h : {Z2(), Z4(), CECH2(), unit_groupoid(S2())}) {
    auto secs = sections(h);
    std::size_t hmaps = 0;
    for (const Mor& f : all_maps(h.G1, h.G1)) {
      auto phi = section_of_map(h, f);
      CHECK(phi.has_value() == is_right_hmap(h, f));
      if (!phi) continue;
      ++hmaps;
      CHECK(section_map(h, *phi) == f);
      std::size_t agree = 0;
      for (const Mor& s : secs) agree += section_map(h, s) == f;
      CHECK(agree == 1);
      CHECK(bijective(f) == ad_bisection(h, *phi).is_bisection);
    }
    CHECK(hmaps == secs.size());
  }
}

TEST_CASE("actor 2-arrows form a strict 2-category") {
  std::vector<Groupoid> gs = {UPT(), Z2(), CECH2()};
  std::size_t interchanges = 0;
  for (const Groupoid& G : gs)
    for (const Groupoid& H : gs)
      for (const Groupoid& K : gs) {
        auto as = all_actors(G, H);
        auto bs = all_actors(H, K);
        for (const Actor& a1 : as)
          for (const Actor& a2 : as)
            for (const Mor& phi : two_arrows(a1, a2)) {
              CHECK(is_actor_2arrow(a1, a1, H.u));
              for (const Actor& a3 : as)
                for (const Mor& phi2 : two_arrows(a2, a3))
                  CHECK(is_actor_2arrow(a1, a3, section_product(H, phi2, phi)));
              for (const Actor& b1 : bs)
                for (const Actor& b2 : bs)
                  for (const Mor& psi : two_arrows(b1, b2)) {
                    Mor hp = actor_horizontal(b1, b2, phi, psi);
                    CHECK(is_actor_2arrow(compose_actors(b1, a1), compose_actors(b2, a2), hp));
                    // interchange against one further layer
                    for (const Actor& a3 : as)
                      for (const Mor& phi2 : two_arrows(a2, a3))
                        for (const Actor& b3 : bs)
                          for (const Mor& psi2 : two_arrows(b2, b3)) {
                            Mor lhs = actor_horizontal(b1, b3, section_product(H, phi2, phi), section_product(K, psi2, psi));
                            Mor rhs = section_product(K, actor_horizontal(b2, b3, phi2, psi2), hp);
                            CHECK(lhs == rhs);
                            ++interchanges;
                          }
                  }
            }
        for (const Actor& a : as)
          for (const Actor& b : bs) CHECK(actor_horizontal(b, b, H.u, K.u) == K.u);
      }
  CHECK(interchanges > 0);
}

TEST_CASE("invertible actors and equivalences") {
  std::vector<Groupoid> gs = {UPT(), Z2(), CECH2(), unit_groupoid(S2())};
  std::size_t inverses = 0;
  for (const Groupoid& G : gs)
    for (const Groupoid& H : gs)
      for (const Actor& a : all_actors(G, H)) {
        bool inv = actor_invertible(a);
        auto p = actor_to_pair(a);
        bool criterion = is_iso(p.base.anchor) && bijective(p.functor.F1);
        CHECK(inv == criterion);
        // an equivalence: some b with invertible 2-arrows id => b a and id => a b
        bool equiv = false;
        for (const Actor& b : all_actors(H, G))
          if (has_invertible_2arrow(identity_actor(G), compose_actors(b, a)) &&
              has_invertible_2arrow(identity_actor(H), compose_actors(a, b)))
            equiv = true;
        CHECK(equiv == inv);
        if (inv) {
          ++inverses;
          CHECK(isomorphic(G, H));
        }
      }
  CHECK(inverses > 0);
}
