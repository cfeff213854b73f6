#include "groupoidal/groupoid.hpp"

namespace groupoidal {

namespace {

std::string tuple_str(std::initializer_list<std::string> xs) {
  std::string out = "(";
  bool first = true;
  for (const auto& x : xs) {
    if (!first) out += ", ";
    out += x;
    first = false;
  }
  return out + ")";
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::BoundaryMismatch, what);
}

Groupoid assemble(Obj G0, Obj G1, Mor r, Mor s, std::shared_ptr<const FibreProduct> comp, Mor m, Mor u, Mor i) {
  Groupoid g;
  g.G0 = std::move(G0);
  g.G1 = std::move(G1);
  g.r = std::move(r);
  g.s = std::move(s);
  g.comp = std::move(comp);
  g.m = rebase(m, g.comp->apex, g.G1);
  g.u = std::move(u);
  g.i = std::move(i);
  return g;
}

}  // namespace

bool operator==(const Groupoid& a, const Groupoid& b) {
  if (a.comp == b.comp && a.G0.identical(b.G0) && a.G1.identical(b.G1) && a.m.table() == b.m.table()) return true;
  return a.G0 == b.G0 && a.G1 == b.G1 && a.r == b.r && a.s == b.s && a.comp->apex == b.comp->apex && a.m == b.m;
}

Groupoid make_groupoid(Obj G0, Obj G1, Mor r, Mor s, Mor m, Mor u, Mor i) {
  require(r.dom() == G1 && r.cod() == G0, "range must map arrows to objects");
  require(s.dom() == G1 && s.cod() == G0, "source must map arrows to objects");
  require(u.dom() == G0 && u.cod() == G1, "unit must map objects to arrows");
  require(i.dom() == G1 && i.cod() == G1, "inversion must map arrows to arrows");
  r = rebase(r, G1, G0);
  s = rebase(s, G1, G0);
  u = rebase(u, G0, G1);
  i = rebase(i, G1, G1);
  auto comp = std::make_shared<const FibreProduct>(fibre_product(s, r));
  require(m.dom() == comp->apex, "multiplication must be defined on G1 x_{s,G0,r} G1");
  require(m.cod() == G1, "multiplication must land in the arrows");
  return assemble(std::move(G0), std::move(G1), std::move(r), std::move(s), std::move(comp), std::move(m), std::move(u),
                  std::move(i));
}

Mor shear_left(const Groupoid& g, FibreProduct* target) {
  FibreProduct ss = fibre_product(g.s, g.s);
  const FibreProduct& c = *g.comp;
  std::vector<int> t(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto [x, h] = c.pairs[k];
    t[k] = ss.find(h, g.m(static_cast<int>(k)));
    if (t[k] < 0)
      throw Error(ErrorKind::ShearNotIso, "shear (x, g) -> (g, x g) is not well defined",
                  tuple_str({g.G1.id(x), g.G1.id(h)}));
  }
  Mor out(c.apex, ss.apex, std::move(t));
  if (target) *target = std::move(ss);
  return out;
}

Mor shear_right(const Groupoid& g, FibreProduct* target) {
  FibreProduct rr = fibre_product(g.r, g.r);
  const FibreProduct& c = *g.comp;
  std::vector<int> t(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto [h, x] = c.pairs[k];
    t[k] = rr.find(h, g.m(static_cast<int>(k)));
    if (t[k] < 0)
      throw Error(ErrorKind::ShearNotIso, "shear (g, x) -> (g, g x) is not well defined",
                  tuple_str({g.G1.id(h), g.G1.id(x)}));
  }
  Mor out(c.apex, rr.apex, std::move(t));
  if (target) *target = std::move(rr);
  return out;
}

ValidationReport validate_groupoid(const Groupoid& g) {
  require(g.r.dom() == g.G1 && g.r.cod() == g.G0, "range boundary");
  require(g.s.dom() == g.G1 && g.s.cod() == g.G0, "source boundary");
  require(g.u.dom() == g.G0 && g.u.cod() == g.G1, "unit boundary");
  require(g.i.dom() == g.G1 && g.i.cod() == g.G1, "inversion boundary");
  require(g.comp && g.m.dom() == g.comp->apex && g.m.cod() == g.G1, "multiplication boundary");

  ValidationReport rep;
  const Obj& A = g.G1;
  const Obj& O = g.G0;
  const FibreProduct& c = *g.comp;
  auto id = [&](int a) { return A.id(a); };
  const int na = static_cast<int>(A.size()), no = static_cast<int>(O.size());

  rep.add("range-cover", "the range map is a cover", is_cover(g.r));
  rep.add("source-cover", "the source map is a cover", is_cover(g.s));

  std::string w_r, w_s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto [a, b] = c.pairs[k];
    int ab = g.m(static_cast<int>(k));
    if (w_r.empty() && g.r(ab) != g.r(a)) w_r = tuple_str({id(a), id(b)});
    if (w_s.empty() && g.s(ab) != g.s(b)) w_s = tuple_str({id(a), id(b)});
  }
  rep.add("range-of-product", "r(g h) = r(g)", w_r.empty(), w_r);
  rep.add("source-of-product", "s(g h) = s(h)", w_s.empty(), w_s);
  const bool products_well_placed = w_r.empty() && w_s.empty();

  // arrows grouped by range, for walking composable triples
  std::vector<std::vector<int>> by_range(static_cast<std::size_t>(no));
  for (int a = 0; a < na; ++a) by_range[static_cast<std::size_t>(g.r(a))].push_back(a);

  std::string w_assoc;
  for (std::size_t k = 0; k < c.size() && w_assoc.empty(); ++k) {
    auto [a, b] = c.pairs[k];
    int ab = g.m(static_cast<int>(k));
    for (int d : by_range[static_cast<std::size_t>(g.s(b))]) {
      int bd = g.mul(b, d);
      int lhs = g.mul(ab, d), rhs = g.mul(a, bd);
      if (lhs < 0 || rhs < 0 || lhs != rhs) {
        w_assoc = tuple_str({id(a), id(b), id(d)});
        break;
      }
    }
  }
  rep.add("associativity", "(g1 g2) g3 = g1 (g2 g3)", w_assoc.empty(), w_assoc);

  std::string w;
  auto first_obj = [&](auto pred) {
    for (int x = 0; x < no; ++x)
      if (!pred(x)) return O.id(x);
    return std::string{};
  };
  auto first_arrow = [&](auto pred) {
    for (int a = 0; a < na; ++a)
      if (!pred(a)) return A.id(a);
    return std::string{};
  };
  w = first_obj([&](int x) { return g.r(g.u(x)) == x; });
  rep.add("unit-range", "r(1_x) = x", w.empty(), w);
  w = first_obj([&](int x) { return g.s(g.u(x)) == x; });
  rep.add("unit-source", "s(1_x) = x", w.empty(), w);
  w = first_arrow([&](int a) { return g.mul(g.u(g.r(a)), a) == a; });
  rep.add("left-unit", "1_{r(g)} g = g", w.empty(), w);
  w = first_arrow([&](int a) { return g.mul(a, g.u(g.s(a))) == a; });
  rep.add("right-unit", "g 1_{s(g)} = g", w.empty(), w);
  w = first_arrow([&](int a) { return g.s(g.i(a)) == g.r(a); });
  rep.add("inverse-source", "s(g^-1) = r(g)", w.empty(), w);
  w = first_arrow([&](int a) { return g.r(g.i(a)) == g.s(a); });
  rep.add("inverse-range", "r(g^-1) = s(g)", w.empty(), w);
  w = first_arrow([&](int a) { return g.mul(g.i(a), a) == g.u(g.s(a)); });
  rep.add("left-inverse", "g^-1 g = 1_{s(g)}", w.empty(), w);
  w = first_arrow([&](int a) { return g.mul(a, g.i(a)) == g.u(g.r(a)); });
  rep.add("right-inverse", "g g^-1 = 1_{r(g)}", w.empty(), w);

  w = first_obj([&](int x) { return g.mul(g.u(x), g.u(x)) == g.u(x); });
  rep.add("unit-idempotent", "1_x 1_x = 1_x", w.empty(), w);
  w = first_arrow([&](int a) { return g.i(g.i(a)) == a; });
  rep.add("inverse-involution", "(g^-1)^-1 = g", w.empty(), w);
  std::string w_anti;
  for (std::size_t k = 0; k < c.size() && w_anti.empty(); ++k) {
    auto [h, a] = c.pairs[k];
    int lhs = g.mul(g.i(a), g.i(h));
    int rhs = g.i(g.m(static_cast<int>(k)));
    if (lhs != rhs) w_anti = tuple_str({id(h), id(a)});
  }
  rep.add("inverse-antihomomorphism", "g^-1 h^-1 = (h g)^-1", w_anti.empty(), w_anti);

  if (products_well_placed) {
    rep.add("shear-left-iso", "(x, g) -> (g, x g) is an isomorphism", is_iso(shear_left(g)));
    rep.add("shear-right-iso", "(g, x) -> (g, g x) is an isomorphism", is_iso(shear_right(g)));
  } else {
    rep.add("shear-left-iso", "(x, g) -> (g, x g) is an isomorphism", false, "shear not well defined");
    rep.add("shear-right-iso", "(g, x) -> (g, g x) is an isomorphism", false, "shear not well defined");
  }
  rep.add("multiplication-cover", "the multiplication is a cover", is_cover(g.m));
  return rep;
}

Groupoid from_multiplication(const Obj& G0, const Obj& G1, const Mor& r0, const Mor& s0, const Mor& m0) {
  require(r0.dom() == G1 && r0.cod() == G0, "range boundary");
  require(s0.dom() == G1 && s0.cod() == G0, "source boundary");
  Mor r = rebase(r0, G1, G0), s = rebase(s0, G1, G0);
  if (!is_cover(r)) throw Error(ErrorKind::NotACover, "range map is not a cover", "r");
  if (!is_cover(s)) throw Error(ErrorKind::NotACover, "source map is not a cover", "s");
  auto comp = std::make_shared<const FibreProduct>(fibre_product(s, r));
  require(m0.dom() == comp->apex && m0.cod() == G1, "multiplication boundary");

  Groupoid partial;
  partial.G0 = G0;
  partial.G1 = G1;
  partial.r = r;
  partial.s = s;
  partial.comp = comp;
  partial.m = rebase(m0, comp->apex, G1);

  FibreProduct ss, rr;
  Mor sh_l = shear_left(partial, &ss);
  Mor sh_r = shear_right(partial, &rr);
  auto inv_l = inverse(sh_l);
  if (!inv_l) {
    std::string wit;
    if (!is_injective(sh_l)) {
      std::vector<int> seen(ss.size(), -1);
      for (std::size_t k = 0; k < sh_l.dom().size(); ++k) {
        int t = sh_l(static_cast<int>(k));
        if (seen[static_cast<std::size_t>(t)] >= 0) {
          wit = comp->apex.id(seen[static_cast<std::size_t>(t)]) + " and " + comp->apex.id(static_cast<int>(k)) + " both map to " + ss.apex.id(t);
          break;
        }
        seen[static_cast<std::size_t>(t)] = static_cast<int>(k);
      }
    } else {
      Subset img = image(sh_l, sh_l.dom().all());
      for (std::size_t t = 0; t < ss.size(); ++t)
        if (!img.test(t)) {
          wit = ss.apex.id(static_cast<int>(t)) + " is not hit";
          break;
        }
    }
    throw Error(ErrorKind::ShearNotIso, "(x, g) -> (g, x g) is not invertible", wit.empty() ? "inverse not continuous" : wit);
  }
  if (!is_iso(sh_r)) throw Error(ErrorKind::ShearNotIso, "(g, x) -> (g, g x) is not invertible", "right shear");

  for (std::size_t k = 0; k < comp->size(); ++k) {
    auto [a, b] = comp->pairs[k];
    int ab = partial.m(static_cast<int>(k));
    for (int d = 0; d < static_cast<int>(G1.size()); ++d) {
      if (comp->find(b, d) < 0) continue;
      if (partial.mul(ab, d) != partial.mul(a, partial.mul(b, d)))
        throw Error(ErrorKind::NotAssociative, "multiplication is not associative",
                    tuple_str({G1.id(a), G1.id(b), G1.id(d)}));
    }
  }

  // u-bar(g) is the unique x with x g = g; read it off the inverse shear at (g, g)
  Mor diag = pairing(ss, Mor::identity(G1), Mor::identity(G1));
  Mor ubar = compose(comp->pr1, compose(*inv_l, diag));
  auto u = factor_through(r, ubar);
  if (!u) throw Error(ErrorKind::DescentFailure, "u-bar is not constant on range fibres");
  // i(g) is the unique x with x g = 1_{s(g)}
  Mor to_unit = pairing(ss, Mor::identity(G1), compose(*u, s));
  Mor i = compose(comp->pr1, compose(*inv_l, to_unit));
  return assemble(G0, G1, r, s, comp, partial.m, *u, i);
}

Groupoid cech_groupoid(const Mor& p) {
  if (!is_cover(p)) throw Error(ErrorKind::NotACover, "Cech groupoid needs a cover", p.show());
  auto kp = fibre_product(p, p);
  const Obj& X = p.dom();
  auto comp = std::make_shared<const FibreProduct>(fibre_product(kp.pr2, kp.pr1));
  std::vector<int> mt(comp->size());
  for (std::size_t k = 0; k < comp->size(); ++k) {
    auto [a, b] = comp->pairs[k];
    mt[k] = kp.at(kp.pairs[static_cast<std::size_t>(a)].first, kp.pairs[static_cast<std::size_t>(b)].second);
  }
  std::vector<int> ut(X.size()), it(kp.size());
  for (std::size_t x = 0; x < X.size(); ++x) ut[x] = kp.at(static_cast<int>(x), static_cast<int>(x));
  for (std::size_t k = 0; k < kp.size(); ++k) it[k] = kp.at(kp.pairs[k].second, kp.pairs[k].first);
  return assemble(X, kp.apex, kp.pr1, kp.pr2, comp, Mor(comp->apex, kp.apex, std::move(mt)), Mor(X, kp.apex, std::move(ut)),
                  Mor(kp.apex, kp.apex, std::move(it)));
}

Groupoid unit_groupoid(const Obj& x) {
  Mor id = Mor::identity(x);
  auto comp = std::make_shared<const FibreProduct>(fibre_product(id, id));
  return assemble(x, x, id, id, comp, comp->pr1, id, id);
}

Groupoid pair_groupoid(const Obj& x) { return cech_groupoid(to_terminal(x, terminal(x.backend()))); }

Groupoid group_groupoid(const std::vector<std::string>& ids, const std::vector<std::vector<int>>& table, Backend b) {
  Obj pt = terminal(b);
  Obj G1 = Obj::discrete(b, ids);
  const int n = static_cast<int>(ids.size());
  Mor r = to_terminal(G1, pt), s = r;
  auto comp = std::make_shared<const FibreProduct>(fibre_product(s, r));
  std::vector<int> mt(comp->size());
  for (std::size_t k = 0; k < comp->size(); ++k)
    mt[k] = table.at(static_cast<std::size_t>(comp->pairs[k].first)).at(static_cast<std::size_t>(comp->pairs[k].second));
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool unit = true;
    for (int x = 0; x < n; ++x) unit = unit && table[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] == x &&
                                      table[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] == x;
    if (unit) e = a;
  }
  if (e < 0) throw Error(ErrorKind::InvalidGroupoid, "group table has no unit");
  std::vector<int> it(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      if (table[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] == e) it[static_cast<std::size_t>(a)] = x;
  for (int v : it)
    if (v < 0) throw Error(ErrorKind::InvalidGroupoid, "group table lacks inverses");
  return assemble(pt, G1, r, s, comp, Mor(comp->apex, G1, std::move(mt)), Mor(pt, G1, {e}), Mor(G1, G1, std::move(it)));
}

Groupoid cyclic_group(std::size_t n, Backend b) {
  std::vector<std::string> ids;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    ids.push_back(std::to_string(a));
    for (std::size_t c = 0; c < n; ++c) table[a][c] = static_cast<int>((a + c) % n);
  }
  return group_groupoid(ids, table, b);
}

PullbackGroupoid pullback_groupoid(const Groupoid& g, const Mor& p0) {
  require(p0.cod() == g.G0, "pull-back needs a map into the objects");
  Mor p = rebase(p0, p0.dom(), g.G0);
  if (!is_cover(p)) throw Error(ErrorKind::NotACover, "pull-back groupoid needs a cover", p.show());
  const Obj& X = p.dom();
  auto left = std::make_shared<const FibreProduct>(fibre_product(p, g.r));                      // (x, g)
  auto outer = std::make_shared<const FibreProduct>(fibre_product(compose(g.s, left->pr2), p));  // ((x, g), x')
  const Obj& A = outer->apex;
  auto x1 = [&](int k) { return left->pairs[static_cast<std::size_t>(outer->pairs[static_cast<std::size_t>(k)].first)].first; };
  auto mid = [&](int k) { return left->pairs[static_cast<std::size_t>(outer->pairs[static_cast<std::size_t>(k)].first)].second; };
  auto x2 = [&](int k) { return outer->pairs[static_cast<std::size_t>(k)].second; };
  auto triple = [&](int a, int h, int b) { return outer->at(left->at(a, h), b); };

  Mor r = compose(left->pr1, outer->pr1);
  Mor s = outer->pr2;
  auto comp = std::make_shared<const FibreProduct>(fibre_product(s, r));
  std::vector<int> mt(comp->size());
  for (std::size_t k = 0; k < comp->size(); ++k) {
    auto [a, b] = comp->pairs[k];
    mt[k] = triple(x1(a), g.mul(mid(a), mid(b)), x2(b));
  }
  std::vector<int> ut(X.size()), it(A.size());
  for (std::size_t x = 0; x < X.size(); ++x)
    ut[x] = triple(static_cast<int>(x), g.u(p(static_cast<int>(x))), static_cast<int>(x));
  for (std::size_t k = 0; k < A.size(); ++k) {
    int kk = static_cast<int>(k);
    it[k] = triple(x2(kk), g.i(mid(kk)), x1(kk));
  }
  PullbackGroupoid out;
  out.g = assemble(X, A, r, s, comp, Mor(comp->apex, A, std::move(mt)), Mor(X, A, std::move(ut)), Mor(A, A, std::move(it)));
  out.hyper = Functor{out.g, g, p, compose(left->pr2, outer->pr1)};
  out.left = left;
  out.outer = outer;
  return out;
}

}  // namespace groupoidal
