#include "groupoidal/action.hpp"

#include "groupoidal/morphism.hpp"
#include "detail.hpp"

namespace groupoidal {

using detail::in;
using detail::ix;
using detail::require;
using detail::tuple_str;

namespace {

bool continuous(const Obj& dom, const Obj& cod, const std::vector<int>& t) {
  return dom.backend() == Backend::FinSet || is_continuous(dom, cod, t);
}

std::string pair_str(const Action& a, int x, int g) {
  return a.side == Side::Right ? tuple_str({a.X.id(x), a.g.G1.id(g)}) : tuple_str({a.g.G1.id(g), a.X.id(x)});
}

}  // namespace

bool operator==(const Action& a, const Action& b) {
  return a.side == b.side && a.X == b.X && a.anchor == b.anchor && a.mult.table() == b.mult.table() && a.g == b.g;
}

std::shared_ptr<const FibreProduct> action_domain(const Groupoid& g, const Mor& anchor, Side side) {
  return std::make_shared<const FibreProduct>(side == Side::Right ? fibre_product(anchor, g.r)
                                                                  : fibre_product(g.s, anchor));
}

Action make_action(const Groupoid& g, const Mor& anchor, Side side, const Mor& mult) {
  require(anchor.cod() == g.G0, "an anchor maps into the objects");
  Action a;
  a.g = g;
  a.X = anchor.dom();
  a.anchor = rebase(anchor, a.X, g.G0);
  a.side = side;
  a.dom = action_domain(g, a.anchor, side);
  require(mult.dom() == a.dom->apex, "the action map must be defined on the anchored fibre product");
  require(mult.cod() == a.X, "the action map must land in the carrier");
  a.mult = rebase(mult, a.dom->apex, a.X);
  return a;
}

Action make_action(const Groupoid& g, const Mor& anchor, Side side, const std::function<int(int, int)>& f) {
  require(anchor.cod() == g.G0, "an anchor maps into the objects");
  Mor anc = rebase(anchor, anchor.dom(), g.G0);
  auto dom = action_domain(g, anc, side);
  const Obj& X = anchor.dom();
  std::vector<int> t(dom->size());
  for (std::size_t k = 0; k < dom->size(); ++k) {
    auto [l, r] = dom->pairs[k];
    int x = side == Side::Right ? l : r, a = side == Side::Right ? r : l;
    t[k] = f(x, a);
    if (t[k] < 0 || t[k] >= in(X.size()))
      throw Error(ErrorKind::InvalidAction, "action undefined on an anchored pair",
                  side == Side::Right ? tuple_str({X.id(x), g.G1.id(a)}) : tuple_str({g.G1.id(a), X.id(x)}));
  }
  Action out;
  out.g = g;
  out.X = X;
  out.anchor = anc;
  out.side = side;
  out.dom = dom;
  out.mult = Mor(dom->apex, X, std::move(t));
  return out;
}

ActionCheck validate_action(const Action& a) {
  const Groupoid& G = a.g;
  const bool right = a.side == Side::Right;
  ActionCheck out;
  std::string wa, wm, wu;
  for (std::size_t k = 0; k < a.dom->size(); ++k) {
    int x = a.elem(in(k)), g = a.arrow(in(k)), y = a.mult(in(k));
    // s(x g) = s(g), or r(g x) = r(g)
    if (wa.empty() && a.anchor(y) != (right ? G.s(g) : G.r(g))) wa = pair_str(a, x, g);
    if (!wm.empty()) continue;
    for (int h = 0; h < in(G.arrows()) && wm.empty(); ++h) {
      if (right ? G.r(h) != G.s(g) : G.s(h) != G.r(g)) continue;
      // (x g) h = x (g h), or h (g x) = (h g) x
      int lhs = a.act(y, h);
      int rhs = a.act(x, right ? G.mul(g, h) : G.mul(h, g));
      if (lhs < 0 || lhs != rhs)
        wm = right ? tuple_str({a.X.id(x), G.G1.id(g), G.G1.id(h)}) : tuple_str({G.G1.id(h), G.G1.id(g), a.X.id(x)});
    }
  }
  for (int x = 0; x < in(a.X.size()) && wu.empty(); ++x)
    if (a.act(x, G.u(a.anchor(x))) != x) wu = a.X.id(x);

  // (m, pr_G) into X x_{s,s} G1, or (pr_G, m) into G1 x_{r,r} X
  FibreProduct target = right ? fibre_product(a.anchor, G.s) : fibre_product(G.r, a.anchor);
  std::vector<int> sh(a.dom->size());
  bool shear_defined = true;
  for (std::size_t k = 0; k < a.dom->size() && shear_defined; ++k) {
    int g = a.arrow(in(k)), y = a.mult(in(k));
    sh[k] = right ? target.find(y, g) : target.find(g, y);
    shear_defined = sh[k] >= 0;
  }
  bool shear_iso = shear_defined && target.size() == a.dom->size() &&
                   is_iso(Mor::trusted(a.dom->apex, target.apex, sh)) &&
                   continuous(a.dom->apex, target.apex, sh);
  bool epi = is_surjective(a.mult);
  bool cover = is_cover(a.mult);

  if (right) {
    out.report.add("anchor", "s(x g) = s(g)", wa.empty(), wa);
    out.report.add("associativity", "(x g1) g2 = x (g1 g2)", wm.empty(), wm);
    out.report.add("unit", "x 1_{s(x)} = x", wu.empty(), wu);
  } else {
    out.report.add("anchor", "r(g x) = r(g)", wa.empty(), wa);
    out.report.add("associativity", "g1 (g2 x) = (g1 g2) x", wm.empty(), wm);
    out.report.add("unit", "1_{r(x)} x = x", wu.empty(), wu);
  }
  // the three alternative unit conditions, informational, must agree with the unit law
  bool base = wa.empty() && wm.empty();
  bool unit = wu.empty();
  bool agree = !base || (unit == epi && unit == cover && unit == shear_iso);
  std::string wagree;
  if (!agree)
    wagree = std::string("unit=") + (unit ? "1" : "0") + " epi=" + (epi ? "1" : "0") + " cover=" + (cover ? "1" : "0") +
             " shear=" + (shear_iso ? "1" : "0");
  out.report.add("unit-forms", "unit law iff action map epi iff cover iff shear iso", agree, wagree);
  out.is_sheaf = is_cover(a.anchor);
  return out;
}

Action canonical_action(const Groupoid& g, Side side) {
  Mor id = Mor::identity(g.G0);
  return make_action(g, id, side, [&](int, int a) { return side == Side::Right ? g.s(a) : g.r(a); });
}

Action multiplication_action(const Groupoid& g, Side side) {
  if (side == Side::Right) return make_action(g, g.s, side, [&](int x, int a) { return g.mul(x, a); });
  return make_action(g, g.r, side, [&](int x, int a) { return g.mul(a, x); });
}

Action convert(const Action& a) {
  Side other = a.side == Side::Right ? Side::Left : Side::Right;
  return make_action(a.g, a.anchor, other, [&](int x, int g) { return a.act(x, a.g.inv(g)); });
}

bool is_free(const Action& a) {
  for (std::size_t k = 0; k < a.dom->size(); ++k) {
    int x = a.elem(in(k)), g = a.arrow(in(k));
    if (a.mult(in(k)) == x && g != a.g.u(a.anchor(x))) return false;
  }
  return true;
}

// ---- G-maps

ValidationReport validate_gmap(const GMap& m) {
  require(m.from.g == m.to.g && m.from.side == m.to.side, "G-maps join actions of one groupoid on one side");
  require(m.f.dom() == m.from.X && m.f.cod() == m.to.X, "a G-map runs between the carriers");
  Mor f = rebase(m.f, m.from.X, m.to.X);
  ValidationReport rep;
  std::string wa, we;
  for (int x = 0; x < in(m.from.X.size()) && wa.empty(); ++x)
    if (m.to.anchor(f(x)) != m.from.anchor(x)) wa = m.from.X.id(x);
  for (std::size_t k = 0; k < m.from.dom->size() && we.empty(); ++k) {
    int x = m.from.elem(in(k)), g = m.from.arrow(in(k));
    int lhs = m.to.act(f(x), g);
    if (lhs < 0 || lhs != f(m.from.mult(in(k)))) we = pair_str(m.from, x, g);
  }
  rep.add("anchor", "anchor(f(x)) = anchor(x)", wa.empty(), wa);
  rep.add("equivariant", "f(x g) = f(x) g", we.empty(), we);
  return rep;
}

bool is_gmap(const Action& from, const Action& to, const Mor& f) { return validate_gmap(GMap{from, to, f}).ok(); }

bool is_invariant(const Action& a, const Mor& f) {
  require(f.dom() == a.X, "an invariant map starts at the carrier");
  Mor g = rebase(f, a.X, f.cod());
  for (std::size_t k = 0; k < a.dom->size(); ++k)
    if (g(a.mult(in(k))) != g(a.elem(in(k)))) return false;
  return true;
}

std::vector<Mor> all_gmaps(const Action& from, const Action& to) {
  std::vector<Mor> out;
  for (auto& f : all_maps(from.X, to.X))
    if (is_gmap(from, to, f)) out.push_back(std::move(f));
  return out;
}

// ---- transformation groupoids

Groupoid transformation_groupoid(const Action& a) {
  const Groupoid& G = a.g;
  const FibreProduct& d = *a.dom;
  const Obj& X = a.X;
  const Obj& A = d.apex;
  const bool right = a.side == Side::Right;
  Mor r = right ? d.pr1 : a.mult;
  Mor s = right ? a.mult : d.pr2;
  FibreProduct comp = fibre_product(s, r);
  std::vector<int> m(comp.size()), u(X.size()), i(A.size());
  for (std::size_t k = 0; k < comp.size(); ++k) {
    auto [k1, k2] = comp.pairs[k];
    int g1 = a.arrow(k1), g2 = a.arrow(k2);
    // (x1, g1)(x2, g2) = (x1, g1 g2); (g1, x1)(g2, x2) = (g1 g2, x2)
    m[k] = right ? d.find(a.elem(k1), G.mul(g1, g2)) : d.find(G.mul(g1, g2), a.elem(k2));
  }
  for (int x = 0; x < in(X.size()); ++x) {
    int e = G.u(a.anchor(x));
    u[ix(x)] = right ? d.find(x, e) : d.find(e, x);
  }
  for (int k = 0; k < in(A.size()); ++k) {
    int g = a.arrow(k), y = a.mult(k);
    i[ix(k)] = right ? d.find(y, G.inv(g)) : d.find(G.inv(g), y);
  }
  return make_groupoid(X, A, r, s, Mor(comp.apex, A, std::move(m)), Mor(X, A, std::move(u)),
                       Mor(A, A, std::move(i)));
}

// ---- enumeration

std::vector<Action> all_actions(const Groupoid& G, const Obj& X, Side side, std::size_t limit) {
  std::vector<Action> out;
  if (limit == 0) return out;
  const bool right = side == Side::Right;
  for (const Mor& anchor : all_maps(X, G.G0)) {
    auto dom = action_domain(G, anchor, side);
    const std::size_t n = dom->size();
    auto elem = [&](int k) { return right ? dom->pairs[ix(k)].first : dom->pairs[ix(k)].second; };
    auto arrow = [&](int k) { return right ? dom->pairs[ix(k)].second : dom->pairs[ix(k)].first; };
    auto find = [&](int x, int g) { return right ? dom->find(x, g) : dom->find(g, x); };
    std::vector<std::vector<int>> options(n);
    for (std::size_t k = 0; k < n; ++k) {
      int x = elem(in(k)), g = arrow(in(k));
      if (g == G.u(anchor(x))) {
        options[k] = {x};
        continue;
      }
      int want = right ? G.s(g) : G.r(g);
      for (int y = 0; y < in(X.size()); ++y)
        if (anchor(y) == want) options[k].push_back(y);
    }
    // (k1, h, k3): right (x, g) then h against (x, g h); left (g, x) then h against (h g, x)
    struct Triple {
      int k1, h, k3;
    };
    std::vector<Triple> triples;
    for (std::size_t k = 0; k < n; ++k) {
      int x = elem(in(k)), g = arrow(in(k));
      for (int h = 0; h < in(G.arrows()); ++h) {
        int gh = right ? G.mul(g, h) : G.mul(h, g);
        if (gh < 0) continue;
        triples.push_back({in(k), h, find(x, gh)});
      }
    }
    std::vector<int> val(n, -1);
    bool stop = false;
    std::function<void(std::size_t)> go = [&](std::size_t t) {
      if (stop) return;
      if (t == n) {
        if (!continuous(dom->apex, X, val)) return;
        Action a;
        a.g = G;
        a.X = X;
        a.anchor = anchor;
        a.side = side;
        a.dom = dom;
        a.mult = Mor::trusted(dom->apex, X, val);
        out.push_back(std::move(a));
        if (out.size() >= limit) stop = true;
        return;
      }
      for (int y : options[t]) {
        val[t] = y;
        bool ok = true;
        for (const auto& tr : triples) {
          if (val[ix(tr.k1)] < 0 || val[ix(tr.k3)] < 0) continue;
          int k2 = find(val[ix(tr.k1)], tr.h);
          if (k2 < 0 || val[ix(k2)] < 0) continue;
          if (val[ix(k2)] != val[ix(tr.k3)]) {
            ok = false;
            break;
          }
        }
        if (ok) go(t + 1);
        if (stop) return;
      }
      val[t] = -1;
    };
    go(0);
    if (stop) break;
  }
  return out;
}

// ---- fibre products of actions

ActionProduct action_fibre_product(const GMap& f1, const GMap& f2) {
  require(f1.to == f2.to, "a fibre product of G-maps needs a common target");
  const Action& a1 = f1.from;
  const Action& a2 = f2.from;
  auto fp = std::make_shared<const FibreProduct>(fibre_product(f1.f, f2.f));
  Mor anchor = compose(a1.anchor, fp->pr1);
  Action act = make_action(a1.g, anchor, a1.side, [&](int k, int g) {
    auto [x1, x2] = fp->pairs[ix(k)];
    return fp->find(a1.act(x1, g), a2.act(x2, g));
  });
  ActionProduct out{act, fp, GMap{act, a1, fp->pr1}, GMap{act, a2, fp->pr2}};
  return out;
}

Action restrict_to_groupoid(const Action& y, const Action& x) {
  require(y.g.G0 == x.X && y.side == x.side, "the acting groupoid must be the transformation groupoid");
  Mor f = rebase(y.anchor, y.X, x.X);
  Mor anchor = compose(x.anchor, f);
  return make_action(x.g, anchor, x.side, [&](int e, int g) {
    int t = x.side == Side::Right ? x.dom->find(f(e), g) : x.dom->find(g, f(e));
    return t < 0 ? -1 : y.act(e, t);
  });
}

Action extend_to_transformation(const Action& y, const Action& x, const Mor& f0) {
  require(is_gmap(y, x, f0), "extension along a map that is not a G-map");
  Mor f = rebase(f0, y.X, x.X);
  Groupoid T = transformation_groupoid(x);
  return make_action(T, f, x.side, [&](int e, int t) { return y.act(e, x.arrow(t)); });
}

Functor nested_transformation_iso(const Action& y_xg, const Action& x, const Action& y_g) {
  Groupoid A = transformation_groupoid(y_xg);
  Groupoid B = transformation_groupoid(y_g);
  std::vector<int> f1(A.arrows());
  for (int k = 0; k < in(A.arrows()); ++k) {
    int e = y_xg.elem(k), t = y_xg.arrow(k), g = x.arrow(t);
    f1[ix(k)] = y_g.side == Side::Right ? y_g.dom->find(e, g) : y_g.dom->find(g, e);
  }
  return Functor{A, B, Mor::identity(A.G0), Mor(A.G1, B.G1, std::move(f1))};
}

// ---- actors

bool operator==(const Actor& a, const Actor& b) { return a.g == b.g && a.h == b.h && a.act == b.act; }

ValidationReport validate_actor(const Actor& a) {
  require(a.act.side == Side::Left && a.act.g == a.g, "an actor is a left action of its source");
  require(a.act.X == a.h.G1, "an actor acts on the arrows of its target");
  const Groupoid& H = a.h;
  ValidationReport rep;
  rep.merge(validate_action(a.act).report, "action");
  std::string wr, ws, wc;
  for (std::size_t c = 0; c < H.comp->size() && wr.empty(); ++c) {
    auto [h1, h2] = H.comp->pairs[c];
    if (a.act.anchor(H.m(in(c))) != a.act.anchor(h1)) wr = tuple_str({H.G1.id(h1), H.G1.id(h2)});
  }
  for (std::size_t k = 0; k < a.act.dom->size(); ++k) {
    int g = a.act.arrow(in(k)), h = a.act.elem(in(k)), gh = a.act.mult(in(k));
    if (ws.empty() && H.s(gh) != H.s(h)) ws = tuple_str({a.g.G1.id(g), H.G1.id(h)});
    if (!wc.empty()) continue;
    for (int h2 = 0; h2 < in(H.arrows()) && wc.empty(); ++h2) {
      int hh = H.mul(h, h2);
      if (hh < 0) continue;
      int lhs = a.act.act(hh, g);
      int rhs = H.mul(gh, h2);
      if (lhs < 0 || lhs != rhs) wc = tuple_str({a.g.G1.id(g), H.G1.id(h), H.G1.id(h2)});
    }
  }
  rep.add("anchor-invariant", "anchor(h1 h2) = anchor(h1)", wr.empty(), wr);
  rep.add("source-invariant", "s(g h) = s(h)", ws.empty(), ws);
  rep.add("commutes", "g (h1 h2) = (g h1) h2", wc.empty(), wc);
  return rep;
}

Actor identity_actor(const Groupoid& h) { return Actor{h, h, multiplication_action(h, Side::Left)}; }

Actor trivial_actor(const Groupoid& h) {
  Groupoid pt = unit_groupoid(terminal(h.backend()));
  Mor anchor = Mor::constant(h.G1, pt.G0, 0);
  return Actor{pt, h, make_action(pt, anchor, Side::Left, [](int x, int) { return x; })};
}

Actor actor_from_functor(const Functor& F) {
  auto inv = inverse(F.F0);
  if (!inv) throw Error(ErrorKind::NotAnActor, "functor is not invertible on objects", F.F0.show());
  const Groupoid& G = F.src;
  const Groupoid& H = F.dst;
  Mor F1 = rebase(F.F1, G.G1, H.G1);
  Mor anchor = compose(rebase(*inv, H.G0, G.G0), H.r);
  return Actor{G, H, make_action(G, anchor, Side::Left, [&](int h, int g) { return H.mul(F1(g), h); })};
}

ActorPair actor_to_pair(const Actor& a) {
  const Groupoid& G = a.g;
  const Groupoid& H = a.h;
  Mor r0 = compose(a.act.anchor, H.u);
  Action base = make_action(G, r0, Side::Left, [&](int x, int g) {
    int k = a.act.act(H.u(x), g);
    return k < 0 ? -1 : H.r(k);
  });
  Groupoid T = transformation_groupoid(base);
  std::vector<int> f1(T.arrows());
  for (int k = 0; k < in(T.arrows()); ++k) f1[ix(k)] = a.act.act(H.u(base.elem(k)), base.arrow(k));
  Functor F{T, H, Mor::identity(H.G0), Mor(T.G1, H.G1, std::move(f1))};
  return ActorPair{base, T, F};
}

Actor pair_to_actor(const Action& base, const Functor& F) {
  const Groupoid& G = base.g;
  const Groupoid& H = F.dst;
  require(base.side == Side::Left && base.X == H.G0, "an actor pair starts from a left action on the objects");
  require(F.src.G1 == base.dom->apex, "the functor must start at the action groupoid");
  require(F.F0 == Mor::identity(H.G0), "the functor must be the identity on objects");
  Mor F1 = rebase(F.F1, base.dom->apex, H.G1);
  Mor anchor = compose(base.anchor, H.r);
  return Actor{G, H, make_action(G, anchor, Side::Left, [&](int h, int g) {
                 int t = base.dom->find(g, H.r(h));
                 return t < 0 ? -1 : H.mul(F1(t), h);
               })};
}

Action actor_apply(const Actor& a, const Action& x) {
  require(x.side == Side::Left && x.g == a.h, "actors act on left actions of their target");
  const Groupoid& H = a.h;
  Mor r0 = compose(a.act.anchor, H.u);
  Mor anchor = compose(r0, x.anchor);
  return make_action(a.g, anchor, Side::Left, [&](int y, int g) {
    int k = a.act.act(H.u(x.anchor(y)), g);
    return k < 0 ? -1 : x.act(y, k);
  });
}

Actor compose_actors(const Actor& b, const Actor& a) {
  require(a.h == b.g, "actors are not composable");
  return Actor{a.g, b.h, actor_apply(a, b.act)};
}

std::vector<Actor> all_actors(const Groupoid& G, const Groupoid& H, std::size_t limit) {
  std::vector<Actor> out;
  Mor id0 = Mor::identity(H.G0);
  for (const Action& base : all_actions(G, H.G0, Side::Left)) {
    Groupoid T = transformation_groupoid(base);
    for (const Functor& F : all_functors(T, H)) {
      if (F.F0 != id0) continue;
      out.push_back(pair_to_actor(base, F));
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

// ---- actor 2-arrows

Mor section_map(const Groupoid& h, const Mor& phi0) {
  Mor phi = rebase(phi0, h.G0, h.G1);
  std::vector<int> t(h.arrows());
  for (int k = 0; k < in(h.arrows()); ++k) {
    t[ix(k)] = h.mul(phi(h.r(k)), k);
    if (t[ix(k)] < 0) throw Error(ErrorKind::NotASection, "s(Phi(x)) != x", h.G0.id(h.r(k)));
  }
  return Mor(h.G1, h.G1, std::move(t));
}

bool is_right_hmap(const Groupoid& h, const Mor& f0) {
  Mor f = rebase(f0, h.G1, h.G1);
  for (int k = 0; k < in(h.arrows()); ++k)
    if (h.s(f(k)) != h.s(k)) return false;
  for (std::size_t c = 0; c < h.comp->size(); ++c) {
    auto [a, b] = h.comp->pairs[c];
    if (f(h.m(in(c))) != h.mul(f(a), b)) return false;
  }
  return true;
}

std::optional<Mor> section_of_map(const Groupoid& h, const Mor& f0) {
  if (!is_right_hmap(h, f0)) return std::nullopt;
  Mor f = rebase(f0, h.G1, h.G1);
  return compose(f, h.u);
}

bool is_actor_2arrow(const Actor& m1, const Actor& m2, const Mor& phi0) {
  require(m1.g == m2.g && m1.h == m2.h, "2-arrows join parallel actors");
  const Groupoid& H = m1.h;
  Mor phi = rebase(phi0, H.G0, H.G1);
  for (int x = 0; x < in(H.objects()); ++x)
    if (H.s(phi(x)) != x) return false;
  Mor f = section_map(H, phi);
  return is_gmap(m1.act, m2.act, f);
}

Mor actor_horizontal(const Actor& b1, const Actor& b2, const Mor& phi0, const Mor& psi0) {
  require(b1.g == b2.g && b1.h == b2.h, "2-arrows join parallel actors");
  const Groupoid& H = b1.g;
  const Groupoid& K = b1.h;
  Mor phi = rebase(phi0, H.G0, H.G1);
  Mor psi = rebase(psi0, K.G0, K.G1);
  std::vector<int> t(K.objects());
  for (int x = 0; x < in(K.objects()); ++x) {
    int y = b1.act.anchor(K.u(x));
    t[ix(x)] = b2.act.act(psi(x), phi(y));
    if (t[ix(x)] < 0) throw Error(ErrorKind::NotComposable, "horizontal product undefined", K.G0.id(x));
  }
  return Mor(K.G0, K.G1, std::move(t));
}

}  // namespace groupoidal
