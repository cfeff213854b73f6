#include "groupoidal/bibundle.hpp"

#include <algorithm>

#include "detail.hpp"
#include "groupoidal/backends.hpp"

namespace groupoidal {

using detail::in;
using detail::ix;
using detail::require;
using detail::tuple_str;

namespace {

std::string first_failure(const ValidationReport& rep) {
  for (const auto& f : rep.findings)
    if (!f.pass) return f.check + (f.witness.empty() ? "" : ": " + f.witness);
  return {};
}

// the unique arrow a with a.y = x, or -1
int left_solve(const Bibundle& b, int x, int y) {
  const Groupoid& G = b.g();
  for (int a = 0; a < in(G.arrows()); ++a)
    if (G.s(a) == b.r()(y) && b.lact(a, y) == x) return a;
  return -1;
}

// the unique arrow h with x.h = y, or -1
int right_solve(const Bibundle& b, int x, int y) {
  const Groupoid& H = b.h();
  for (int h = 0; h < in(H.arrows()); ++h)
    if (H.r(h) == b.s()(x) && b.ract(x, h) == y) return h;
  return -1;
}

// the map on the quotient of q induced by f on representatives; DescentFailure when f is not constant
Mor descend_table(const Coequalizer& q, const Obj& cod, const std::function<int(int)>& f, const char* what) {
  std::vector<int> t(q.classes.size(), -1);
  for (std::size_t c = 0; c < q.classes.size(); ++c)
    for (int e : q.classes[c]) {
      int v = f(e);
      if (v < 0) throw Error(ErrorKind::DescentFailure, std::string(what) + " is undefined", q.proj.dom().id(e));
      if (t[c] >= 0 && t[c] != v)
        throw Error(ErrorKind::DescentFailure, std::string(what) + " does not descend", q.proj.dom().id(e));
      t[c] = v;
    }
  return Mor(q.quotient, cod, std::move(t));
}

}  // namespace

bool operator==(const Bibundle& a, const Bibundle& b) { return a.left == b.left && a.right == b.right; }

Bibundle make_bibundle(const Action& left, const Action& right) {
  require(left.side == Side::Left && right.side == Side::Right, "a bibundle has a left and a right action");
  require(left.X == right.X && left.X.ids() == right.X.ids(), "both actions live on one carrier");
  return Bibundle{left, right};
}

ValidationReport validate_bibundle(const Bibundle& x) {
  ValidationReport rep;
  rep.merge(validate_action(x.left).report, "left");
  rep.merge(validate_action(x.right).report, "right");
  const Groupoid& H = x.h();
  std::string ws, wr, wc;
  for (std::size_t k = 0; k < x.left.dom->size(); ++k) {
    int e = x.left.elem(in(k)), a = x.left.arrow(in(k)), y = x.left.mult(in(k));
    if (ws.empty() && x.s()(y) != x.s()(e)) ws = tuple_str({x.g().G1.id(a), x.X().id(e)});
    for (int h = 0; h < in(H.arrows()) && wc.empty(); ++h) {
      if (H.r(h) != x.s()(e)) continue;
      int l = x.ract(y, h), m = x.ract(e, h);
      int rr = m < 0 ? -1 : x.lact(a, m);
      if (l < 0 || l != rr) wc = tuple_str({x.g().G1.id(a), x.X().id(e), H.G1.id(h)});
    }
  }
  for (std::size_t k = 0; k < x.right.dom->size() && wr.empty(); ++k) {
    int e = x.right.elem(in(k)), y = x.right.mult(in(k));
    if (x.r()(y) != x.r()(e)) wr = tuple_str({x.X().id(e), H.G1.id(x.right.arrow(in(k)))});
  }
  rep.add("s-invariant", "s(g x) = s(x)", ws.empty(), ws);
  rep.add("r-invariant", "r(x h) = r(x)", wr.empty(), wr);
  rep.add("commute", "(g x) h = g (x h)", wc.empty(), wc);
  return rep;
}

Bibundle unit_bibundle(const Groupoid& g) {
  return make_bibundle(multiplication_action(g, Side::Left), multiplication_action(g, Side::Right));
}

Bibundle dual(const Bibundle& x) { return make_bibundle(convert(x.right), convert(x.left)); }

Bibundle actor_bibundle(const Actor& a) { return make_bibundle(a.act, multiplication_action(a.h, Side::Right)); }

BibundleClass classify(const Bibundle& x) {
  BibundleClass c;
  ValidationReport fr = validate_principal(x.right, x.r());
  ValidationReport fl = validate_principal(x.left, x.s());
  bool scov = is_cover(x.s());
  bool basic = is_basic(x.right).flag;
  c.is_functor = fr.ok();
  c.is_covering = c.is_functor && scov;
  c.is_actor = basic && scov;
  c.is_equivalence = c.is_functor && fl.ok();
  c.report.add("functor", "the right action is principal over G0 with projection r", c.is_functor, first_failure(fr));
  c.report.add("covering", "bibundle functor with s a cover", c.is_covering,
               c.is_functor && !scov ? x.s().show() : "");
  c.report.add("actor", "the right action is basic and s a cover", c.is_actor,
               c.is_actor ? "" : (basic ? x.s().show() : "right action is not basic"));
  c.report.add("equivalence", "bibundle functor whose left action is principal over H0 with projection s",
               c.is_equivalence, first_failure(fl));
  return c;
}

// ---- G,H-maps

ValidationReport validate_bimap(const BiMap& m) {
  ValidationReport rep;
  rep.merge(validate_gmap(GMap{m.from.left, m.to.left, m.f}), "left");
  rep.merge(validate_gmap(GMap{m.from.right, m.to.right, m.f}), "right");
  return rep;
}

bool is_bimap(const Bibundle& a, const Bibundle& b, const Mor& f) {
  return is_gmap(a.left, b.left, f) && is_gmap(a.right, b.right, f);
}

std::vector<Mor> all_bimaps(const Bibundle& a, const Bibundle& b, std::size_t limit) {
  require(a.g() == b.g() && a.h() == b.h(), "G,H-maps join bibundles between the same groupoids");
  std::vector<Mor> out;
  if (limit == 0) return out;
  std::vector<std::pair<int, int>> rel;
  for (std::size_t k = 0; k < a.left.dom->size(); ++k) rel.emplace_back(a.left.elem(in(k)), a.left.mult(in(k)));
  for (std::size_t k = 0; k < a.right.dom->size(); ++k) rel.emplace_back(a.right.elem(in(k)), a.right.mult(in(k)));
  Coequalizer orbits = quotient_by(a.X(), rel);
  const Groupoid& G = a.g();
  const Groupoid& H = a.h();
  const std::size_t n = a.X().size();

  // assigns f(e) = t and follows both actions; false on a clash
  auto spread = [&](std::vector<int>& f, int e0, int t0) {
    std::vector<int> stack{e0};
    f[ix(e0)] = t0;
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      auto visit = [&](int e2, int t2) {
        if (e2 < 0) return true;
        if (t2 < 0) return false;
        if (f[ix(e2)] < 0) {
          f[ix(e2)] = t2;
          stack.push_back(e2);
          return true;
        }
        return f[ix(e2)] == t2;
      };
      for (int g = 0; g < in(G.arrows()); ++g)
        if (G.s(g) == a.r()(e) && !visit(a.lact(g, e), b.lact(g, f[ix(e)]))) return false;
      for (int h = 0; h < in(H.arrows()); ++h)
        if (H.r(h) == a.s()(e) && !visit(a.ract(e, h), b.ract(f[ix(e)], h))) return false;
    }
    return true;
  };

  std::function<void(std::size_t, std::vector<int>&)> rec = [&](std::size_t o, std::vector<int>& f) {
    if (out.size() >= limit) return;
    if (o == orbits.classes.size()) {
      if (!is_continuous(a.X(), b.X(), f)) return;
      Mor m(a.X(), b.X(), f);
      if (is_bimap(a, b, m)) out.push_back(m);
      return;
    }
    int e = orbits.classes[o].front();
    for (int t = 0; t < in(b.X().size()); ++t) {
      if (b.r()(t) != a.r()(e) || b.s()(t) != a.s()(e)) continue;
      std::vector<int> g = f;
      if (spread(g, e, t)) rec(o + 1, g);
    }
  };
  std::vector<int> f(n, -1);
  rec(0, f);
  return out;
}

std::optional<Mor> find_bimap_iso(const Bibundle& a, const Bibundle& b) {
  if (a.X().size() != b.X().size()) return std::nullopt;
  for (const Mor& m : all_bimaps(a, b))
    if (is_iso(m)) return m;
  return std::nullopt;
}

Action descend_action(const Action& a, const Coequalizer& q) {
  require(q.proj.dom() == a.X, "descent along a quotient of the carrier");
  auto anchor = descend(q, rebase(a.anchor, q.proj.dom(), a.anchor.cod()));
  if (!anchor) throw Error(ErrorKind::DescentFailure, "anchor is not constant on classes", a.anchor.show());
  Mor proj = rebase(q.proj, a.X, q.quotient);
  Action out = make_action(a.g, *anchor, a.side, [&](int c, int g) {
    int y = a.act(q.classes[ix(c)].front(), g);
    return y < 0 ? -1 : proj(y);
  });
  for (std::size_t k = 0; k < a.dom->size(); ++k) {
    int e = a.elem(in(k)), g = a.arrow(in(k));
    if (out.act(proj(e), g) != proj(a.mult(in(k))))
      throw Error(ErrorKind::DescentFailure, "action does not descend", a.dom->apex.id(in(k)));
  }
  return out;
}

// ---- functors and anafunctors

PulledBibundle pull_bibundle(const Functor& F, const Bibundle& y) {
  require(F.dst == y.g(), "F*(Y) needs Y to start at the target of F");
  const Groupoid& G = F.src;
  auto fp = std::make_shared<const FibreProduct>(fibre_product(F.F0, y.r()));
  Action left = make_action(G, fp->pr1, Side::Left, [&](int k, int g) {
    int e = fp->pairs[ix(k)].second;
    int z = y.lact(F.F1(g), e);
    return z < 0 ? -1 : fp->find(G.r(g), z);
  });
  Action right = make_action(y.h(), compose(y.s(), fp->pr2), Side::Right, [&](int k, int c) {
    auto [x, e] = fp->pairs[ix(k)];
    int z = y.ract(e, c);
    return z < 0 ? -1 : fp->find(x, z);
  });
  return PulledBibundle{make_bibundle(left, right), fp};
}

PulledBibundle functor_to_bibundle(const Functor& F) { return pull_bibundle(F, unit_bibundle(F.dst)); }

TwoSidedGroupoid two_sided_groupoid(const Bibundle& x) {
  const Groupoid& G = x.g();
  const Groupoid& H = x.h();
  TwoSidedGroupoid out;
  out.gx = std::make_shared<const FibreProduct>(fibre_product(G.s, x.r()));
  out.gxh = std::make_shared<const FibreProduct>(fibre_product(compose(x.s(), out.gx->pr2), H.r));
  const Obj& A = out.gxh->apex;
  std::vector<int> rt(A.size()), st(A.size()), it(A.size()), ut(x.X().size());
  for (int k = 0; k < in(A.size()); ++k) {
    int a = out.first(k), e = out.middle(k), b = out.last(k);
    rt[ix(k)] = x.lact(a, e);
    st[ix(k)] = x.ract(e, b);
    it[ix(k)] = out.arrow(G.inv(a), x.lact(a, x.ract(e, b)), H.inv(b));
  }
  for (int e = 0; e < in(x.X().size()); ++e) ut[ix(e)] = out.arrow(G.u(x.r()(e)), e, H.u(x.s()(e)));
  Mor r(A, x.X(), rt), s(A, x.X(), st);
  FibreProduct comp = fibre_product(s, r);
  std::vector<int> mt(comp.size());
  for (std::size_t c = 0; c < comp.size(); ++c) {
    auto [k1, k2] = comp.pairs[c];
    int a1 = out.first(k1), e1 = out.middle(k1), b1 = out.last(k1);
    int a2 = out.first(k2), b2 = out.last(k2);
    mt[c] = out.arrow(G.mul(a1, a2), x.lact(G.inv(a2), e1), H.mul(b1, b2));
  }
  out.g = make_groupoid(x.X(), A, r, s, Mor(comp.apex, A, std::move(mt)), Mor(x.X(), A, std::move(ut)),
                        Mor(A, A, std::move(it)));
  return out;
}

BibundleAnafunctor bibundle_to_anafunctor(const Bibundle& x) {
  BibundleClass c = classify(x);
  if (!c.is_functor)
    throw Error(ErrorKind::NotABibundleFunctor, "the right action is not principal over G0",
                c.report.find("functor")->witness);
  const Groupoid& G = x.g();
  const Groupoid& H = x.h();
  PullbackGroupoid pb = pullback_groupoid(G, x.r());
  std::vector<int> f1(pb.g.arrows());
  for (int k = 0; k < in(f1.size()); ++k) {
    int x1 = pb.first(k), g = pb.middle(k), x2 = pb.last(k);
    // x1 = g.e and x2 = e.h
    int e = x.lact(G.inv(g), x1);
    f1[ix(k)] = right_solve(x, e, x2);
  }
  BibundleAnafunctor out;
  out.ana = anafunctor_over(H, pb, x.s(), Mor(pb.g.G1, H.G1, std::move(f1)));
  out.gxh = two_sided_groupoid(x);
  std::vector<int> t(out.gxh.g.arrows());
  for (int k = 0; k < in(t.size()); ++k) {
    int a = out.gxh.first(k), e = out.gxh.middle(k), b = out.gxh.last(k);
    t[ix(k)] = pb.triple(x.lact(a, e), a, x.ract(e, b));
  }
  Mor iso1(out.gxh.g.G1, pb.g.G1, std::move(t));
  out.iso = Functor{out.gxh.g, pb.g, Mor::identity(x.X()), iso1};
  out.report.merge(validate_anafunctor(out.ana), "anafunctor");
  out.report.merge(validate_functor(out.iso), "comparison");
  out.report.add("comparison-iso", "(g, x, h) -> (g x, g, x h) is invertible", is_iso(iso1), is_iso(iso1) ? "" : iso1.show());
  return out;
}

BetaBibundle beta_ana_to_bibundle(const Anafunctor& a) {
  const Groupoid& G = a.src;
  const Groupoid& H = a.dst;
  const Mor& F0 = a.F.F0;
  BetaBibundle out;
  out.gx = std::make_shared<const FibreProduct>(fibre_product(G.s, a.p()));
  out.gxh = std::make_shared<const FibreProduct>(fibre_product(compose(F0, out.gx->pr2), H.r));
  Mor mid = compose(out.gx->pr2, out.gxh->pr1);
  const PullbackGroupoid& pb = a.pb;
  out.diagonal = make_action(pb.g, mid, Side::Right, [&](int k, int t) {
    int g1 = out.first(k), h = out.last(k);
    int g2 = pb.middle(t), x2 = pb.last(t);
    int f = a.F.F1(t);
    return out.triple(G.mul(g1, g2), x2, H.mul(H.inv(f), h));
  });
  out.quot = orbit_space(out.diagonal);
  Action left = make_action(G, compose(G.r, compose(out.gx->pr1, out.gxh->pr1)), Side::Left, [&](int k, int g) {
    return out.triple(G.mul(g, out.first(k)), out.middle(k), out.last(k));
  });
  Action right = make_action(H, compose(H.s, out.gxh->pr2), Side::Right, [&](int k, int h) {
    return out.triple(out.first(k), out.middle(k), H.mul(out.last(k), h));
  });
  out.bib = make_bibundle(descend_action(left, out.quot), descend_action(right, out.quot));
  return out;
}

BiMap beta_counit(const Bibundle& x) {
  BibundleAnafunctor fx = bibundle_to_anafunctor(x);
  BetaBibundle b = beta_ana_to_bibundle(fx.ana);
  Mor f = descend_table(b.quot, x.X(), [&](int k) {
    int m = x.ract(b.middle(k), b.last(k));
    return m < 0 ? -1 : x.lact(b.first(k), m);
  }, "(g, x, h) -> g x h");
  return BiMap{b.bib, x, f};
}

AnaNat beta_unit(const Anafunctor& a) {
  BetaBibundle b = beta_ana_to_bibundle(a);
  Anafunctor e = bibundle_to_anafunctor(b.bib).ana;
  const Groupoid& H = a.dst;
  auto value = [&](int xt, int k) {
    int f = a.F1(xt, b.first(k), b.middle(k));
    return f < 0 ? -1 : H.mul(f, b.last(k));
  };
  return make_ananat(e, a, [&](int y, int xt) {
    int v = -1;
    for (int k : b.quot.classes[ix(y)]) {
      int w = value(xt, k);
      if (v >= 0 && w != v) throw Error(ErrorKind::DescentFailure, "Psi depends on the representative", b.quot.quotient.id(y));
      v = w;
    }
    return v;
  });
}

// ---- composition

Composite compose_bibundles(const Bibundle& x, const Bibundle& y) {
  if (!(x.h() == y.g())) throw Error(ErrorKind::MiddleMismatch, "the middle groupoids differ");
  BasicResult basic = is_basic(x.right);
  if (!basic.flag) throw Error(ErrorKind::NotComposable, "the middle action is not basic", first_failure(basic.report));
  const Groupoid& H = x.h();
  Composite c;
  c.x = x;
  c.y = y;
  c.pairs = std::make_shared<const FibreProduct>(fibre_product(x.s(), y.r()));
  const FibreProduct& P = *c.pairs;
  c.diagonal = make_action(H, compose(x.s(), P.pr1), Side::Right, [&](int k, int h) {
    auto [e, f] = P.pairs[ix(k)];
    return P.find(x.ract(e, h), y.lact(H.inv(h), f));
  });
  c.quot = orbit_space(c.diagonal);
  Action left = make_action(x.g(), compose(x.r(), P.pr1), Side::Left, [&](int k, int g) {
    auto [e, f] = P.pairs[ix(k)];
    return P.find(x.lact(g, e), f);
  });
  Action right = make_action(y.h(), compose(y.s(), P.pr2), Side::Right, [&](int k, int h) {
    auto [e, f] = P.pairs[ix(k)];
    return P.find(e, y.ract(f, h));
  });
  c.bib = make_bibundle(descend_action(left, c.quot), descend_action(right, c.quot));
  return c;
}


BiMap associator(const Composite& xy, const Composite& xy_z, const Composite& yz, const Composite& x_yz) {
  require(xy_z.x == xy.bib && x_yz.y == yz.bib && xy.x == x_yz.x && xy.y == yz.x && xy_z.y == yz.y,
          "associator needs the composites of one chain");
  Mor f = descend_table(xy_z.quot, x_yz.bib.X(), [&](int k) {
    auto [q, z] = xy_z.pairs->pairs[ix(k)];
    int v = -1;
    // every lift of q gives the same class
    for (int kk : xy.quot.classes[ix(q)]) {
      auto [e, f2] = xy.pairs->pairs[ix(kk)];
      int c = yz.cls(f2, z);
      int w = c < 0 ? -1 : x_yz.cls(e, c);
      if (w < 0 || (v >= 0 && w != v)) return -1;
      v = w;
    }
    return v;
  }, "((x, y), z) -> (x, (y, z))");
  return BiMap{xy_z.bib, x_yz.bib, f};
}

BiMap right_unitor(const Composite& c) {
  require(c.y == unit_bibundle(c.x.h()), "right unitor needs X x_H H1");
  Mor f = descend_table(c.quot, c.x.X(), [&](int k) {
    auto [e, h] = c.pairs->pairs[ix(k)];
    return c.x.ract(e, h);
  }, "(x, h) -> x h");
  return BiMap{c.bib, c.x, f};
}

BiMap left_unitor(const Composite& c) {
  require(c.x == unit_bibundle(c.y.g()), "left unitor needs G1 x_G Y");
  Mor f = descend_table(c.quot, c.y.X(), [&](int k) {
    auto [g, e] = c.pairs->pairs[ix(k)];
    return c.y.lact(g, e);
  }, "(g, y) -> g y");
  return BiMap{c.bib, c.y, f};
}

BiMap horizontal(const Composite& from, const Composite& to, const Mor& f0, const Mor& g0) {
  Mor f = rebase(f0, from.x.X(), to.x.X());
  Mor g = rebase(g0, from.y.X(), to.y.X());
  Mor m = descend_table(from.quot, to.bib.X(), [&](int k) {
    auto [e, y] = from.pairs->pairs[ix(k)];
    return to.cls(f(e), g(y));
  }, "(x, y) -> (f x, g y)");
  return BiMap{from.bib, to.bib, m};
}

BiMap identity_bimap(const Bibundle& x) { return BiMap{x, x, Mor::identity(x.X())}; }

BiMap compose_bimaps(const BiMap& f, const BiMap& g) {
  require(g.to.X() == f.from.X(), "G,H-maps are not composable");
  return BiMap{g.from, f.to, compose(f.f, rebase(g.f, g.from.X(), f.from.X()))};
}

BiMap functor_composite_iso(const Functor& F2, const Functor& F1) {
  PulledBibundle a = functor_to_bibundle(F2), b = functor_to_bibundle(F1);
  Composite c = compose_bibundles(a.bib, b.bib);
  PulledBibundle t = functor_to_bibundle(compose_functors(F1, F2));
  const Groupoid& K = F1.dst;
  Mor f = descend_table(c.quot, t.bib.X(), [&](int k) {
    auto [p, q] = c.pairs->pairs[ix(k)];
    int x = a.fp->pairs[ix(p)].first, h = a.fp->pairs[ix(p)].second;
    int kk = b.fp->pairs[ix(q)].second;
    int v = K.mul(F1.F1(h), kk);
    return v < 0 ? -1 : t.fp->find(x, v);
  }, "(x, h, k) -> (x, F1(h) k)");
  return BiMap{c.bib, t.bib, f};
}

InverseIsos check_inverse(const Bibundle& x) {
  BibundleClass cl = classify(x);
  if (!cl.is_equivalence)
    throw Error(ErrorKind::NotAnEquivalence, "not a bibundle equivalence", cl.report.find("equivalence")->witness);
  Bibundle d = dual(x);
  InverseIsos out{compose_bibundles(x, d), compose_bibundles(d, x), {}, {}};
  const Composite& a = out.xx;
  const Composite& b = out.xx_dual;
  Bibundle ug = unit_bibundle(x.g()), uh = unit_bibundle(x.h());
  Mor f1 = descend_table(a.quot, ug.X(), [&](int k) {
    auto [x1, x2] = a.pairs->pairs[ix(k)];
    return left_solve(x, x1, x2);
  }, "the arrow g with g x2 = x1");
  Mor f2 = descend_table(b.quot, uh.X(), [&](int k) {
    auto [x1, x2] = b.pairs->pairs[ix(k)];
    return right_solve(x, x1, x2);
  }, "the arrow h with x1 h = x2");
  out.iso1 = BiMap{a.bib, ug, f1};
  out.iso2 = BiMap{b.bib, uh, f2};
  return out;
}

WitnessResult composite_witness(const Bibundle& x, const Bibundle& y, const Bibundle& w, const Mor& m0) {
  require(x.h() == y.g() && w.g() == x.g() && w.h() == y.h(), "composite witness boundaries");
  Composite c = compose_bibundles(x, y);
  const FibreProduct& P = *c.pairs;
  require(m0.dom() == P.apex && m0.cod() == w.X(), "m runs from X x_{H0} Y to W");
  Mor m = rebase(m0, P.apex, w.X());
  WitnessResult out;
  bool inv = is_invariant(c.diagonal, m);
  std::string we;
  for (int k = 0; k < in(P.size()) && we.empty(); ++k) {
    auto [e, f] = P.pairs[ix(k)];
    for (int g = 0; g < in(x.g().arrows()) && we.empty(); ++g)
      if (x.g().s(g) == x.r()(e) && m(P.find(x.lact(g, e), f)) != w.lact(g, m(k))) we = P.apex.id(k);
    for (int h = 0; h < in(y.h().arrows()) && we.empty(); ++h)
      if (y.h().r(h) == y.s()(f) && m(P.find(e, y.ract(f, h))) != w.ract(m(k), h)) we = P.apex.id(k);
  }
  std::string wa;
  for (int k = 0; k < in(P.size()) && wa.empty(); ++k)
    if (w.r()(m(k)) != x.r()(P.pairs[ix(k)].first) || w.s()(m(k)) != y.s()(P.pairs[ix(k)].second)) wa = P.apex.id(k);
  out.report.add("invariant", "m(x h, y) = m(x, h y)", inv, inv ? "" : m.show());
  out.report.add("equivariant", "m(g x, y k) = g m(x, y) k", we.empty() && wa.empty(), we.empty() ? wa : we);
  bool iso = false;
  if (inv) {
    out.induced = descend(c.quot, m);
    iso = out.induced && is_iso(*out.induced);
  }
  out.report.add("induced-iso", "the induced map X x_H Y -> W is an isomorphism", iso,
                 iso || !out.induced ? "" : out.induced->show());
  out.flag = inv && we.empty() && wa.empty() && iso;
  if (out.flag) {
    FibreProduct xw = fibre_product(x.r(), w.r());
    Mor shear = pairing(xw, P.pr1, m);
    out.report.add("cover", "m is a cover", is_cover(m), is_cover(m) ? "" : m.show());
    out.report.add("shear", "(x, y) -> (x, m(x, y)) is an isomorphism onto X x_{G0} W", is_iso(shear),
                   is_iso(shear) ? "" : shear.show());
  }
  return out;
}

// ---- actions and actors

ActedOn act_on(const Bibundle& x, const Action& y0) {
  BibundleClass cl = classify(x);
  if (!cl.is_actor) throw Error(ErrorKind::NotAnActor, "not a bibundle actor", cl.report.find("actor")->witness);
  Action y = y0.side == Side::Left ? y0 : convert(y0);
  require(y.g == x.h(), "the action must be of the right-hand groupoid");
  const Groupoid& H = x.h();
  ActedOn out;
  out.pairs = std::make_shared<const FibreProduct>(fibre_product(x.s(), y.anchor));
  const FibreProduct& P = *out.pairs;
  out.diagonal = make_action(H, compose(x.s(), P.pr1), Side::Right, [&](int k, int h) {
    auto [e, f] = P.pairs[ix(k)];
    return P.find(x.ract(e, h), y.act(f, H.inv(h)));
  });
  out.quot = orbit_space(out.diagonal);
  Action left = make_action(x.g(), compose(x.r(), P.pr1), Side::Left, [&](int k, int g) {
    auto [e, f] = P.pairs[ix(k)];
    return P.find(x.lact(g, e), f);
  });
  out.action = descend_action(left, out.quot);
  return out;
}

Mor act_on_map(const ActedOn& a1, const ActedOn& a2, const Mor& f0) {
  Mor f = rebase(f0, a1.pairs->g.dom(), a2.pairs->g.dom());
  return descend_table(a1.quot, a2.action.X, [&](int k) {
    auto [e, y] = a1.pairs->pairs[ix(k)];
    int j = a2.pairs->find(e, f(y));
    return j < 0 ? -1 : a2.quot.proj(j);
  }, "(x, y) -> (x, f y)");
}

ActorDecomposition decompose_actor(const Bibundle& x) {
  BibundleClass cl = classify(x);
  if (!cl.is_actor) throw Error(ErrorKind::NotAnActor, "not a bibundle actor", cl.report.find("actor")->witness);
  const Groupoid& G = x.g();
  const Groupoid& H = x.h();
  ActorDecomposition out;
  out.objects = orbit_space(x.right);
  Mor p = out.objects.proj;
  out.pairs = std::make_shared<const FibreProduct>(fibre_product(x.s(), x.s()));
  const FibreProduct& P = *out.pairs;
  Action diag = make_action(H, compose(x.s(), P.pr1), Side::Right, [&](int k, int h) {
    auto [x1, x2] = P.pairs[ix(k)];
    return P.find(x.ract(x1, h), x.ract(x2, h));
  });
  out.arrows = orbit_space(diag);
  const Coequalizer& A = out.arrows;
  const Obj& K0 = out.objects.quotient;
  const Obj& K1 = A.quotient;
  Mor rK = descend_table(A, K0, [&](int k) { return p(P.pairs[ix(k)].first); }, "range");
  Mor sK = descend_table(A, K0, [&](int k) { return p(P.pairs[ix(k)].second); }, "source");
  Mor iK = descend_table(A, K1, [&](int k) { return A.proj(P.find(P.pairs[ix(k)].second, P.pairs[ix(k)].first)); },
                         "inversion");
  std::vector<int> ut(K0.size());
  for (std::size_t o = 0; o < K0.size(); ++o) {
    int e = out.objects.classes[o].front();
    ut[o] = A.proj(P.find(e, e));
  }
  FibreProduct comp = fibre_product(sK, rK);
  std::vector<int> mt(comp.size(), -1);
  for (std::size_t c = 0; c < comp.size(); ++c) {
    auto [c1, c2] = comp.pairs[c];
    auto [x1, x2] = P.pairs[ix(A.classes[ix(c1)].front())];
    // the representative of c2 starting at x2
    for (int k : A.classes[ix(c2)])
      if (P.pairs[ix(k)].first == x2) mt[c] = A.proj(P.find(x1, P.pairs[ix(k)].second));
  }
  out.k = make_groupoid(K0, K1, rK, sK, Mor(comp.apex, K1, std::move(mt)), Mor(K0, K1, std::move(ut)), iK);

  Action gl = make_action(G, compose(x.r(), P.pr1), Side::Left, [&](int k, int g) {
    auto [x1, x2] = P.pairs[ix(k)];
    return P.find(x.lact(g, x1), x2);
  });
  out.actor = Actor{G, out.k, descend_action(gl, A)};

  Action kl = make_action(out.k, p, Side::Left, [&](int e, int k) {
    auto [x1, x2] = P.pairs[ix(A.classes[ix(k)].front())];
    int h = right_solve(x, x2, e);
    return h < 0 ? -1 : x.ract(x1, h);
  });
  out.equiv = make_bibundle(kl, x.right);
  out.recomposed = compose_bibundles(actor_bibundle(out.actor), out.equiv);
  const Composite& rc = out.recomposed;
  Mor f = descend_table(rc.quot, x.X(), [&](int k) {
    auto [a, e] = rc.pairs->pairs[ix(k)];
    return out.equiv.lact(a, e);
  }, "(k, x) -> k x");
  out.iso = BiMap{rc.bib, x, f};
  return out;
}

Imprimitivity imprimitivity(const Bibundle& x) {
  BasicResult br = is_basic(x.right);
  if (!br.flag) throw Error(ErrorKind::NotBasic, "right action is not basic", first_failure(br.report));
  BasicResult bl = is_basic(x.left);
  if (!bl.flag) throw Error(ErrorKind::NotBasic, "left action is not basic", first_failure(bl.report));
  Imprimitivity out;
  out.right_orbits = br.orbit;
  out.left_orbits = bl.orbit;
  out.on_right_orbits = descend_action(x.left, out.right_orbits);
  out.on_left_orbits = descend_action(x.right, out.left_orbits);
  out.left_groupoid = transformation_groupoid(out.on_right_orbits);
  out.right_groupoid = transformation_groupoid(out.on_left_orbits);
  Action l = extend_to_transformation(x.left, out.on_right_orbits, out.right_orbits.proj);
  Action r = extend_to_transformation(x.right, out.on_left_orbits, out.left_orbits.proj);
  out.equiv = make_bibundle(l, r);
  return out;
}

// ---- quasi-inverses

BibundleSearch find_bibundle_quasi_inverse(const Bibundle& x, std::size_t cap) {
  BibundleSearch out;
  out.cap = std::max(cap, x.X().size());
  const Groupoid& G = x.g();
  const Groupoid& H = x.h();
  const Backend be = G.backend();
  Bibundle ug = unit_bibundle(G), uh = unit_bibundle(H);
  for (std::size_t n = 0; n <= out.cap; ++n) {
    std::vector<std::string> ids = numbered_ids(n);
    std::vector<Obj> carriers = be == Backend::FinSet ? std::vector<Obj>{Obj::finset(ids)} : all_topologies(ids);
    for (const Obj& Y : carriers) {
      std::vector<Action> lefts;
      for (auto& l : all_actions(H, Y, Side::Left)) {
        // up to relabelling a FinSet carrier, the left anchor may be taken monotone
        if (be == Backend::FinSet && !std::is_sorted(l.anchor.table().begin(), l.anchor.table().end())) continue;
        lefts.push_back(std::move(l));
      }
      if (lefts.empty()) continue;
      std::vector<Action> rights = all_actions(G, Y, Side::Right);
      for (const Action& l : lefts)
        for (const Action& r : rights) {
          Bibundle y = make_bibundle(l, r);
          if (!validate_bibundle(y).ok()) continue;
          ++out.examined;
          if (!classify(y).is_functor) continue;
          Composite xy = compose_bibundles(x, y);
          auto u = find_bimap_iso(xy.bib, ug);
          if (!u) continue;
          Composite yx = compose_bibundles(y, x);
          auto c = find_bimap_iso(yx.bib, uh);
          if (!c) continue;
          out.inverse = y;
          out.unit = BiMap{xy.bib, ug, *u};
          out.counit = BiMap{yx.bib, uh, *c};
          return out;
        }
    }
  }
  return out;
}

Bibundle cover_equivalence(const Mor& p) {
  Groupoid C = cech_groupoid(p);
  Groupoid Z = unit_groupoid(p.cod());
  Action left = make_action(Z, p, Side::Left, [](int e, int) { return e; });
  return make_bibundle(left, canonical_action(C, Side::Right));
}

Bibundle cech_equivalence(const Mor& p, const Mor& q) {
  Groupoid A = cech_groupoid(p), B = cech_groupoid(q);
  auto fp = std::make_shared<const FibreProduct>(fibre_product(p, q));
  Action left = make_action(A, fp->pr1, Side::Left, [&](int k, int a) { return fp->find(A.r(a), fp->pairs[ix(k)].second); });
  Action right = make_action(B, fp->pr2, Side::Right, [&](int k, int b) { return fp->find(fp->pairs[ix(k)].first, B.s(b)); });
  return make_bibundle(left, right);
}

}  // namespace groupoidal
