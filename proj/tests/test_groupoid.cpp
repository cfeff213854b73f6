#include <catch_amalgamated.hpp>

#include "groupoidal/backends.hpp"
#include "groupoidal/groupoid.hpp"

using namespace groupoidal;

namespace {

Obj PT() { return terminal(Backend::FinSet); }
Obj S2() { return Obj::finset({"a", "b"}); }
Obj S3() { return Obj::finset({"c", "d", "e"}); }
Mor p2() { return to_terminal(S2(), PT()); }
Mor p3() { return to_terminal(S3(), PT()); }
Groupoid Z2() { return group_groupoid({"e", "t"}, {{0, 1}, {1, 0}}); }

// number of unit maps u' and inversions i' satisfying the groupoid equations,
// counted pointwise: every equation constrains u' or i' at a single point, so
// the solution set is the product of the per-point candidate sets
std::pair<std::size_t, std::size_t> count_unit_inverse_solutions(const Groupoid& g, std::vector<int>* unit_out,
                                                                   std::vector<int>* inv_out) {
  const int na = int(g.arrows()), no = int(g.objects());
  std::size_t units = 1;
  std::vector<int> unit(std::size_t(no), -1);
  for (int x = 0; x < no; ++x) {
    std::size_t here = 0;
    for (int cand = 0; cand < na; ++cand) {
      if (g.r(cand) != x || g.s(cand) != x) continue;
      bool ok = true;
      for (int a = 0; a < na && ok; ++a) {
        if (g.r(a) == x && g.mul(cand, a) != a) ok = false;
        if (g.s(a) == x && g.mul(a, cand) != a) ok = false;
      }
      if (ok) {
        ++here;
        unit[std::size_t(x)] = cand;
      }
    }
    units *= here;
  }
  std::size_t invs = 1;
  std::vector<int> inv(std::size_t(na), -1);
  if (units == 1) {
    for (int a = 0; a < na; ++a) {
      std::size_t here = 0;
      for (int cand = 0; cand < na; ++cand) {
        if (g.s(cand) != g.r(a) || g.r(cand) != g.s(a)) continue;
        if (g.mul(cand, a) != unit[std::size_t(g.s(a))] || g.mul(a, cand) != unit[std::size_t(g.r(a))]) continue;
        ++here;
        inv[std::size_t(a)] = cand;
      }
      invs *= here;
    }
  }
  if (unit_out) *unit_out = unit;
  if (inv_out) *inv_out = inv;
  return {units, invs};
}

Groupoid strip_and_rebuild(const Groupoid& g) { return from_multiplication(g.G0, g.G1, g.r, g.s, g.m); }

}  // namespace

TEST_CASE("pair groupoid on {a, b}") {
  Groupoid g = cech_groupoid(p2());
  CHECK(g.arrows() == 4);
  auto rep = validate_groupoid(g);
  INFO(rep.summary());
  CHECK(rep.ok());
  int ab = g.G1.at("a|b"), ba = g.G1.at("b|a");
  CHECK(g.G1.id(g.mul(ab, ba)) == "a|a");
  CHECK(g.mul(ab, ab) == -1);
}

TEST_CASE("Z/2 as a one-object groupoid") {
  auto rep = validate_groupoid(Z2());
  INFO(rep.summary());
  CHECK(rep.ok());
}

TEST_CASE("corrupted pair groupoid is rejected with a witness") {
  Groupoid g = cech_groupoid(p2());
  std::vector<int> mt = g.m.table();
  int k = g.comp->at(g.G1.at("a|b"), g.G1.at("b|a"));
  mt[std::size_t(k)] = g.G1.at("a|b");
  Groupoid bad = make_groupoid(g.G0, g.G1, g.r, g.s, Mor(g.comp->apex, g.G1, mt), g.u, g.i);
  auto rep = validate_groupoid(bad);
  CHECK_FALSE(rep.ok());
  bool assoc_or_inverse = !rep.passed("associativity") || !rep.passed("right-inverse");
  CHECK(assoc_or_inverse);
  const Finding* f = rep.find("source-of-product");
  REQUIRE(f);
  CHECK_FALSE(f->pass);  // s((a,b)(b,a)) must be a, the corrupted value has source b
  CHECK(f->witness == "(a|b, b|a)");
}

TEST_CASE("units and inverses recovered from the multiplication") {
  SECTION("pair groupoid") {
    Groupoid g = strip_and_rebuild(cech_groupoid(p2()));
    for (const auto& x : {"a", "b"}) CHECK(g.G1.id(g.u(g.G0.at(x))) == std::string(x) + "|" + x);
    CHECK(g.G1.id(g.i(g.G1.at("a|b"))) == "b|a");
    CHECK(g.G1.id(g.i(g.G1.at("b|a"))) == "a|b");
  }
  SECTION("Z/2") {
    Groupoid g = strip_and_rebuild(Z2());
    CHECK(g.G1.id(g.u(0)) == "e");
    CHECK(g.i == Mor::identity(g.G1));
  }
  SECTION("Z/4") {
    Groupoid z4 = cyclic_group(4);
    Groupoid g = strip_and_rebuild(z4);
    // oracle: solve x + k = 0 in Z/4 by trying every x
    for (int k = 0; k < 4; ++k) {
      int sol = -1;
      for (int x = 0; x < 4; ++x)
        if ((x + k) % 4 == 0) sol = x;
      CHECK(g.G1.id(g.i(g.G1.at(std::to_string(k)))) == std::to_string(sol));
    }
  }
}

TEST_CASE("derived unit and inversion are the only solutions") {
  std::vector<Groupoid> fixtures{unit_groupoid(PT()), unit_groupoid(S2()), cech_groupoid(p2()), Z2(), cyclic_group(3),
                                 cyclic_group(4),     cyclic_group(5),      cyclic_group(6)};
  // the symmetric group on three letters: non-abelian, six arrows
  std::vector<std::vector<int>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<int>> s3(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int k = 0; k < 3; ++k) c[std::size_t(k)] = perms[std::size_t(a)][std::size_t(perms[std::size_t(b)][std::size_t(k)])];
      for (int d = 0; d < 6; ++d)
        if (perms[std::size_t(d)] == c) s3[std::size_t(a)][std::size_t(b)] = d;
    }
  fixtures.push_back(group_groupoid({"id", "t01", "t12", "t02", "c1", "c2"}, s3));
  for (const auto& g : fixtures) {
    REQUIRE(g.arrows() <= 6);
    Groupoid d = strip_and_rebuild(g);
    std::vector<int> unit, inv;
    auto [nu, ni] = count_unit_inverse_solutions(g, &unit, &inv);
    CHECK(nu == 1);
    CHECK(ni == 1);
    CHECK(d.u.table() == unit);
    CHECK(d.i.table() == inv);
    CHECK(validate_groupoid(d).ok());
  }
}

TEST_CASE("from_multiplication errors") {
  Obj pt = PT();
  SECTION("range not a cover") {
    Obj G0 = S2();
    Obj G1 = Obj::finset({"g"});
    Mor r = Mor::from_ids(G1, G0, {{"g", "a"}});
    auto fp = fibre_product(r, r);
    Mor m(fp.apex, G1, {0});
    try {
      from_multiplication(G0, G1, r, r, m);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotACover);
    }
  }
  SECTION("monoid table: shear not invertible") {
    Obj G1 = Obj::finset({"0", "1"});
    Mor r = to_terminal(G1, pt);
    auto fp = fibre_product(r, r);
    std::vector<int> mt(fp.size());
    for (std::size_t k = 0; k < fp.size(); ++k) mt[k] = std::max(fp.pairs[k].first, fp.pairs[k].second);
    try {
      from_multiplication(pt, G1, r, r, Mor(fp.apex, G1, mt));
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ShearNotIso);
      CHECK_FALSE(e.witness().empty());
    }
  }
  SECTION("Latin square that is not associative") {
    Obj G1 = Obj::finset({"0", "1", "2"});
    Mor r = to_terminal(G1, pt);
    auto fp = fibre_product(r, r);
    std::vector<int> mt(fp.size());
    for (std::size_t k = 0; k < fp.size(); ++k) mt[k] = (6 - fp.pairs[k].first - fp.pairs[k].second) % 3;
    try {
      from_multiplication(pt, G1, r, r, Mor(fp.apex, G1, mt));
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAssociative);
    }
  }
}

TEST_CASE("Cech groupoids") {
  CHECK(cech_groupoid(p2()).arrows() == 4);
  CHECK(cech_groupoid(p3()).arrows() == 9);
  Groupoid g = cech_groupoid(Mor::identity(S3()));
  CHECK(g.arrows() == 3);
  for (int a = 0; a < 3; ++a) CHECK(g.u(g.r(a)) == a);
  CHECK(validate_groupoid(g).ok());
  Obj a = Obj::finset({"a"});
  CHECK_THROWS_AS(cech_groupoid(Mor::from_ids(a, S2(), {{"a", "a"}})), Error);
}

TEST_CASE("unit groupoids") {
  for (const auto& x : {PT(), S2(), Obj::finset({})}) {
    Groupoid g = unit_groupoid(x);
    CHECK(g.arrows() == x.size());
    CHECK(is_iso(g.r));
    CHECK(validate_groupoid(g).ok());
  }
}

TEST_CASE("pull-back groupoids") {
  SECTION("of a unit groupoid is the Cech groupoid") {
    Obj y = Obj::finset({"y1", "y2"});
    Obj x = Obj::finset({"x1", "x2", "x3"});
    Mor p = Mor::from_ids(x, y, {{"x1", "y1"}, {"x2", "y1"}, {"x3", "y2"}});
    auto pb = pullback_groupoid(unit_groupoid(y), p);
    Groupoid c = cech_groupoid(p);
    REQUIRE(pb.g.arrows() == c.arrows());
    // relabel (x1, y, x2) -> (x1, x2) and compare every table
    auto relabel = [&](int k) {
      int l = pb.outer->pairs[std::size_t(k)].first;
      return c.G1.at(pair_id(x.id(pb.left->pairs[std::size_t(l)].first), x.id(pb.outer->pairs[std::size_t(k)].second)));
    };
    for (int k = 0; k < int(pb.g.arrows()); ++k) {
      CHECK(c.r(relabel(k)) == pb.g.r(k));
      CHECK(c.s(relabel(k)) == pb.g.s(k));
      CHECK(c.i(relabel(k)) == relabel(pb.g.i(k)));
      for (int j = 0; j < int(pb.g.arrows()); ++j) {
        int pr = pb.g.mul(k, j);
        int cr = c.mul(relabel(k), relabel(j));
        CHECK((pr < 0) == (cr < 0));
        if (pr >= 0) CHECK(relabel(pr) == cr);
      }
    }
  }
  SECTION("along the identity") {
    Groupoid z = Z2();
    auto pb = pullback_groupoid(z, Mor::identity(z.G0));
    CHECK(pb.g.arrows() == z.arrows());
    CHECK(is_iso(pb.hyper.F1));
    CHECK(validate_groupoid(pb.g).ok());
  }
  SECTION("Z/2 along p2") {
    auto pb = pullback_groupoid(Z2(), p2());
    CHECK(pb.g.arrows() == 8);  // 2 * 2 * 2 triples
    CHECK(validate_groupoid(pb.g).ok());
  }
  SECTION("iterated pull-back") {
    Obj w = Obj::finset({"w1", "w2", "w3"});
    Mor q = Mor::from_ids(w, S2(), {{"w1", "a"}, {"w2", "b"}, {"w3", "b"}});
    for (const Groupoid& base : {Z2(), cech_groupoid(p2())}) {
      Mor p = base.G0.size() == 1 ? p2() : Mor::identity(S2());
      auto once = pullback_groupoid(base, p);
      auto twice = pullback_groupoid(once.g, q);
      auto direct = pullback_groupoid(base, compose(p, q));
      REQUIRE(twice.g.arrows() == direct.g.arrows());
      // (w1, (x1, g, x2), w2) -> (w1, g, w2)
      auto middle = [](const PullbackGroupoid& pb, int k) {
        return pb.left->pairs[std::size_t(pb.outer->pairs[std::size_t(k)].first)].second;
      };
      auto ends = [](const PullbackGroupoid& pb, int k) {
        return std::pair{pb.left->pairs[std::size_t(pb.outer->pairs[std::size_t(k)].first)].first,
                         pb.outer->pairs[std::size_t(k)].second};
      };
      std::vector<int> rel(twice.g.arrows());
      for (int k = 0; k < int(twice.g.arrows()); ++k) {
        auto [a, b] = ends(twice, k);
        int g = middle(once, middle(twice, k));
        rel[std::size_t(k)] = direct.outer->at(direct.left->at(a, g), b);
      }
      Mor bij(twice.g.G1, direct.g.G1, rel);
      CHECK(is_iso(bij));
      for (int k = 0; k < int(twice.g.arrows()); ++k)
        for (int j = 0; j < int(twice.g.arrows()); ++j) {
          int m1 = twice.g.mul(k, j);
          if (m1 >= 0) CHECK(rel[std::size_t(m1)] == direct.g.mul(rel[std::size_t(k)], rel[std::size_t(j)]));
        }
    }
  }
}

TEST_CASE("multiplication is a cover on every constructed groupoid") {
  std::vector<Groupoid> all{cech_groupoid(p2()), cech_groupoid(p3()), Z2(), cyclic_group(4), unit_groupoid(S3()),
                            pullback_groupoid(Z2(), p3()).g};
  Obj sp = sierpinski();
  all.push_back(pair_groupoid(sp));
  all.push_back(unit_groupoid(sp));
  all.push_back(cyclic_group(3, Backend::FinTop));
  for (const auto& g : all) {
    auto rep = validate_groupoid(g);
    INFO(rep.summary());
    CHECK(rep.ok());
    CHECK(is_cover(g.m));
  }
}

TEST_CASE("group case: the unit element is two-sided") {
  for (std::size_t n = 1; n <= 5; ++n) {
    Groupoid g = cyclic_group(n);
    int one = g.u(0);
    for (int a = 0; a < int(n); ++a) {
      CHECK(g.mul(one, a) == a);
      CHECK(g.mul(a, one) == a);
    }
  }
}

TEST_CASE("FinTop groupoids: the indiscrete pair groupoid") {
  // over the indiscrete two-point space the pair groupoid is a groupoid in FinTop
  Groupoid g = pair_groupoid(indiscrete_space(2));
  CHECK(validate_groupoid(g).ok());
  Groupoid d = from_multiplication(g.G0, g.G1, g.r, g.s, g.m);
  CHECK(d.u == g.u);
  CHECK(d.i == g.i);
}
