#include "groupoidal/morphism.hpp"

#include <array>
#include <cstdint>

#include "groupoidal/backends.hpp"
#include "detail.hpp"

namespace groupoidal {

using detail::in;
using detail::ix;
using detail::require;
using detail::tuple_str;

namespace {

// hom[r][s] = arrows with that range and source
std::vector<std::vector<std::vector<int>>> homs(const Groupoid& g) {
  std::vector<std::vector<std::vector<int>>> h(g.objects(), std::vector<std::vector<int>>(g.objects()));
  for (int a = 0; a < in(g.arrows()); ++a) h[ix(g.r(a))][ix(g.s(a))].push_back(a);
  return h;
}

// phi(a) L = R phi(b) for every edge, s(phi(n)) = src(n), r(phi(n)) = dst(n)
struct NatEdge {
  int a, b, L, R;
};

std::vector<std::vector<int>> solve_nat(const Groupoid& H, const std::vector<int>& src, const std::vector<int>& dst,
                                        const std::vector<NatEdge>& edges, std::size_t limit) {
  const std::size_t n = src.size();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[ix(edges[e].a)].push_back(e);
    incident[ix(edges[e].b)].push_back(e);
  }
  auto hom = homs(H);
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> members;
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    int c = in(members.size());
    members.emplace_back();
    std::vector<std::size_t> stack{root};
    comp[root] = c;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.back().push_back(in(v));
      for (std::size_t e : incident[v])
        for (int w : {edges[e].a, edges[e].b})
          if (comp[ix(w)] < 0) {
            comp[ix(w)] = c;
            stack.push_back(ix(w));
          }
    }
  }

  // every consistent assignment of each component, seeded at its first node
  std::vector<std::vector<std::vector<int>>> options(members.size());
  std::vector<int> val(n, -1);
  for (std::size_t c = 0; c < members.size(); ++c) {
    int root = members[c].front();
    for (int h : hom[ix(dst[ix(root)])][ix(src[ix(root)])]) {
      for (int v : members[c]) val[ix(v)] = -1;
      val[ix(root)] = h;
      std::vector<int> queue{root};
      bool ok = true;
      for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
        int v = queue[qi];
        for (std::size_t e : incident[ix(v)]) {
          const NatEdge& E = edges[e];
          if (E.a == v && val[ix(E.b)] < 0) {
            int t = H.mul(H.mul(H.i(E.R), val[ix(v)]), E.L);
            if (t < 0) ok = false;
            else {
              val[ix(E.b)] = t;
              queue.push_back(E.b);
            }
          } else if (E.b == v && val[ix(E.a)] < 0) {
            int t = H.mul(H.mul(E.R, val[ix(v)]), H.i(E.L));
            if (t < 0) ok = false;
            else {
              val[ix(E.a)] = t;
              queue.push_back(E.a);
            }
          }
        }
      }
      for (int v : members[c])
        ok = ok && val[ix(v)] >= 0 && H.s(val[ix(v)]) == src[ix(v)] && H.r(val[ix(v)]) == dst[ix(v)];
      for (int v : members[c]) {
        if (!ok) break;
        for (std::size_t e : incident[ix(v)]) {
          const NatEdge& E = edges[e];
          int lhs = H.mul(val[ix(E.a)], E.L), rhs = H.mul(E.R, val[ix(E.b)]);
          if (lhs < 0 || lhs != rhs) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      std::vector<int> opt;
      for (int v : members[c]) opt.push_back(val[ix(v)]);
      options[c].push_back(std::move(opt));
    }
    if (options[c].empty()) return {};
  }

  std::vector<std::vector<int>> out;
  std::vector<std::size_t> choice(members.size(), 0);
  while (out.size() < limit) {
    std::vector<int> t(n);
    for (std::size_t c = 0; c < members.size(); ++c)
      for (std::size_t k = 0; k < members[c].size(); ++k) t[ix(members[c][k])] = options[c][choice[c]][k];
    out.push_back(std::move(t));
    std::size_t c = 0;
    while (c < members.size() && ++choice[c] == options[c].size()) choice[c++] = 0;
    if (c == members.size()) break;
  }
  return out;
}

bool continuous(const Obj& dom, const Obj& cod, const std::vector<int>& t) {
  return dom.backend() == Backend::FinSet || is_continuous(dom, cod, t);
}

// injectivity / surjectivity witness for a map that should be a bijection
std::string bijection_witness(const Mor& f) {
  std::vector<int> seen(f.cod().size(), -1);
  for (int k = 0; k < in(f.dom().size()); ++k) {
    int t = f(k);
    if (seen[ix(t)] >= 0) return f.dom().id(seen[ix(t)]) + " and " + f.dom().id(k) + " both map to " + f.cod().id(t);
    seen[ix(t)] = k;
  }
  for (std::size_t t = 0; t < seen.size(); ++t)
    if (seen[t] < 0) return f.cod().id(in(t)) + " is not hit";
  return "inverse is not continuous";
}

}  // namespace

// ---- functors

bool operator==(const Functor& a, const Functor& b) {
  return a.F0 == b.F0 && a.F1 == b.F1 && a.src == b.src && a.dst == b.dst;
}

ValidationReport validate_functor(const Functor& F) {
  const Groupoid& G = F.src;
  const Groupoid& H = F.dst;
  require(F.F0.dom() == G.G0 && F.F0.cod() == H.G0, "F0 must map objects to objects");
  require(F.F1.dom() == G.G1 && F.F1.cod() == H.G1, "F1 must map arrows to arrows");
  Mor F0 = rebase(F.F0, G.G0, H.G0), F1 = rebase(F.F1, G.G1, H.G1);
  ValidationReport rep;
  std::string wr, ws, wm, wu;
  for (int g = 0; g < in(G.arrows()); ++g) {
    if (wr.empty() && H.r(F1(g)) != F0(G.r(g))) wr = G.G1.id(g);
    if (ws.empty() && H.s(F1(g)) != F0(G.s(g))) ws = G.G1.id(g);
  }
  for (std::size_t k = 0; k < G.comp->size() && wm.empty(); ++k) {
    auto [a, b] = G.comp->pairs[k];
    int lhs = F1(G.m(in(k)));
    int rhs = H.mul(F1(a), F1(b));
    if (lhs != rhs) wm = tuple_str({G.G1.id(a), G.G1.id(b)});
  }
  for (int x = 0; x < in(G.objects()) && wu.empty(); ++x)
    if (F1(G.u(x)) != H.u(F0(x))) wu = G.G0.id(x);
  rep.add("range", "r(F1(g)) = F0(r(g))", wr.empty(), wr);
  rep.add("source", "s(F1(g)) = F0(s(g))", ws.empty(), ws);
  rep.add("multiplicative", "F1(g1 g2) = F1(g1) F1(g2)", wm.empty(), wm);
  rep.add("units", "F1(1_x) = 1_{F0(x)}", wu.empty(), wu);
  return rep;
}

Functor identity_functor(const Groupoid& g) { return Functor{g, g, Mor::identity(g.G0), Mor::identity(g.G1)}; }

Functor compose_functors(const Functor& F2, const Functor& F1) {
  require(F1.dst == F2.src, "functors are not composable");
  return Functor{F1.src, F2.dst, compose(F2.F0, F1.F0), compose(F2.F1, F1.F1)};
}

std::vector<Functor> all_functors(const Groupoid& G, const Groupoid& H, std::size_t limit) {
  std::vector<Functor> out;
  const std::size_t na = G.arrows();
  auto hom = homs(H);
  // triples (a, b, ab) checked once their largest index is assigned
  std::vector<std::vector<std::array<int, 3>>> due(na);
  for (std::size_t k = 0; k < G.comp->size(); ++k) {
    auto [a, b] = G.comp->pairs[k];
    int c = G.m(in(k));
    due[ix(std::max({a, b, c}))].push_back({a, b, c});
  }
  std::vector<int> f1(na, -1);
  for_each_table(G.objects(), H.objects(), [&](const std::vector<int>& f0) {
    if (!continuous(G.G0, H.G0, f0)) return true;
    std::function<bool(std::size_t)> go = [&](std::size_t t) -> bool {
      if (t == na) {
        if (!continuous(G.G1, H.G1, f1)) return true;
        out.push_back(Functor{G, H, Mor::trusted(G.G0, H.G0, f0), Mor::trusted(G.G1, H.G1, f1)});
        return out.size() < limit;
      }
      for (int h : hom[ix(f0[ix(G.r(in(t)))])][ix(f0[ix(G.s(in(t)))])]) {
        f1[t] = h;
        bool ok = true;
        for (const auto& tr : due[t])
          if (H.mul(f1[ix(tr[0])], f1[ix(tr[1])]) != f1[ix(tr[2])]) {
            ok = false;
            break;
          }
        if (ok && !go(t + 1)) return false;
      }
      f1[t] = -1;
      return true;
    };
    return go(0);
  });
  return out;
}

PulledFunctor pullback_functor(const Functor& F, const Mor& q0) {
  const Groupoid& H = F.dst;
  require(q0.cod() == H.G0, "pull-back of a functor needs a map into its target objects");
  Mor q = rebase(q0, q0.dom(), H.G0);
  PulledFunctor out;
  out.tilde = std::make_shared<const FibreProduct>(fibre_product(F.F0, q));
  out.src = pullback_groupoid(F.src, out.tilde->pr1);
  out.dst = pullback_groupoid(H, q);
  const auto& tl = *out.tilde;
  std::vector<int> t(out.src.g.arrows());
  for (std::size_t k = 0; k < t.size(); ++k) {
    int kk = in(k);
    t[k] = out.dst.triple(tl.pairs[ix(out.src.first(kk))].second, F.F1(out.src.middle(kk)),
                          tl.pairs[ix(out.src.last(kk))].second);
  }
  out.F = Functor{out.src.g, out.dst.g, tl.pr2, Mor(out.src.g.G1, out.dst.g.G1, std::move(t))};
  return out;
}

// ---- natural transformations

ValidationReport validate_nat(const NatTrans& n) {
  const Functor& F1 = n.from;
  const Functor& F2 = n.to;
  require(F1.src == F2.src && F1.dst == F2.dst, "natural transformation between non-parallel functors");
  const Groupoid& G = F1.src;
  const Groupoid& H = F1.dst;
  require(n.phi.dom() == G.G0 && n.phi.cod() == H.G1, "transformation must map objects to arrows");
  Mor phi = rebase(n.phi, G.G0, H.G1);
  ValidationReport rep;
  std::string ws, wr, wn;
  for (int x = 0; x < in(G.objects()); ++x) {
    if (ws.empty() && H.s(phi(x)) != F1.F0(x)) ws = G.G0.id(x);
    if (wr.empty() && H.r(phi(x)) != F2.F0(x)) wr = G.G0.id(x);
  }
  for (int g = 0; g < in(G.arrows()) && wn.empty(); ++g) {
    int lhs = H.mul(phi(G.r(g)), F1.F1(g));
    int rhs = H.mul(F2.F1(g), phi(G.s(g)));
    if (lhs < 0 || lhs != rhs) wn = G.G1.id(g);
  }
  rep.add("source", "s(Phi(x)) = F1(x)", ws.empty(), ws);
  rep.add("range", "r(Phi(x)) = F2(x)", wr.empty(), wr);
  rep.add("naturality", "Phi(r(g)) F1(g) = F2(g) Phi(s(g))", wn.empty(), wn);
  return rep;
}

NatTrans identity_nat(const Functor& F) { return NatTrans{F, F, compose(F.dst.u, F.F0)}; }

NatTrans inverse_nat(const NatTrans& n) { return NatTrans{n.to, n.from, compose(n.from.dst.i, n.phi)}; }

NatTrans compose_nat(NatMode mode, const NatTrans& a, const NatTrans& b) {
  if (mode == NatMode::Vertical) {
    if (b.to != a.from) throw Error(ErrorKind::NotComposable, "vertical product needs b.to = a.from");
    const Groupoid& H = a.from.dst;
    const Obj& G0 = a.from.src.G0;
    std::vector<int> t(G0.size());
    for (int x = 0; x < in(G0.size()); ++x) {
      t[ix(x)] = H.mul(a.phi(x), b.phi(x));
      if (t[ix(x)] < 0) throw Error(ErrorKind::NotComposable, "arrows do not compose", G0.id(x));
    }
    return NatTrans{b.from, a.to, Mor(G0, H.G1, std::move(t))};
  }
  // a: E => E' between H -> K, b: F => F' between G -> H
  if (!(b.from.dst == a.from.src)) throw Error(ErrorKind::NotComposable, "horizontal product needs matching groupoids");
  const Groupoid& K = a.from.dst;
  const Obj& G0 = b.from.src.G0;
  std::vector<int> t(G0.size());
  for (int x = 0; x < in(G0.size()); ++x) {
    t[ix(x)] = K.mul(a.phi(b.to.F0(x)), a.from.F1(b.phi(x)));
    if (t[ix(x)] < 0) throw Error(ErrorKind::NotComposable, "arrows do not compose", G0.id(x));
  }
  return NatTrans{compose_functors(a.from, b.from), compose_functors(a.to, b.to), Mor(G0, K.G1, std::move(t))};
}

std::vector<NatTrans> all_nat_transformations(const Functor& F1, const Functor& F2, std::size_t limit) {
  require(F1.src == F2.src && F1.dst == F2.dst, "functors are not parallel");
  const Groupoid& G = F1.src;
  const Groupoid& H = F1.dst;
  std::vector<int> src(G.objects()), dst(G.objects());
  for (int x = 0; x < in(G.objects()); ++x) {
    src[ix(x)] = F1.F0(x);
    dst[ix(x)] = F2.F0(x);
  }
  std::vector<NatEdge> edges;
  for (int g = 0; g < in(G.arrows()); ++g) edges.push_back({G.r(g), G.s(g), F1.F1(g), F2.F1(g)});
  bool top = G.backend() == Backend::FinTop;
  std::vector<NatTrans> out;
  for (auto& t : solve_nat(H, src, dst, edges, top ? SIZE_MAX : limit)) {
    if (!continuous(G.G0, H.G1, t)) continue;
    out.push_back(NatTrans{F1, F2, Mor::trusted(G.G0, H.G1, std::move(t))});
    if (out.size() >= limit) break;
  }
  return out;
}

NatTrans descend_nat(const Functor& F1, const Functor& F2, const Mor& p0, const Mor& psi0) {
  const Groupoid& G = F1.src;
  const Groupoid& H = F1.dst;
  require(p0.cod() == G.G0, "descent needs a map into the objects");
  require(psi0.dom() == p0.dom() && psi0.cod() == H.G1, "psi must map X to the target arrows");
  Mor p = rebase(p0, p0.dom(), G.G0);
  Mor psi = rebase(psi0, p.dom(), H.G1);
  if (!is_cover(p)) throw Error(ErrorKind::NotACover, "descent needs a cover", p.show());
  const Obj& X = p.dom();
  std::vector<int> rep(G.objects(), -1);
  for (int x = 0; x < in(X.size()); ++x) {
    int& first = rep[ix(p(x))];
    if (first < 0) first = x;
    else if (psi(first) != psi(x))
      throw Error(ErrorKind::NotFibrewiseConstant, "psi is not constant on the fibres of p",
                  tuple_str({X.id(first), X.id(x)}));
  }
  auto phi = factor_through(p, psi);
  if (!phi) throw Error(ErrorKind::DescentFailure, "psi does not factor through p");
  NatTrans out{F1, F2, *phi};
  if (!validate_nat(out).ok()) throw Error(ErrorKind::DescentFailure, "descended map is not natural");
  return out;
}

// ---- sections

Functor Ad(const Groupoid& g, const Mor& phi0) {
  require(phi0.dom() == g.G0 && phi0.cod() == g.G1, "a section maps objects to arrows");
  Mor phi = rebase(phi0, g.G0, g.G1);
  for (int x = 0; x < in(g.objects()); ++x)
    if (g.s(phi(x)) != x) throw Error(ErrorKind::NotASection, "s(Phi(x)) != x", g.G0.id(x));
  std::vector<int> t(g.arrows());
  for (int a = 0; a < in(g.arrows()); ++a) t[ix(a)] = g.mul(g.mul(phi(g.r(a)), a), g.i(phi(g.s(a))));
  return Functor{g, g, compose(g.r, phi), Mor(g.G1, g.G1, std::move(t))};
}

Bisection ad_bisection(const Groupoid& g, const Mor& phi0) {
  require(phi0.dom() == g.G0 && phi0.cod() == g.G1, "a section maps objects to arrows");
  Mor phi = rebase(phi0, g.G0, g.G1);
  Bisection out;
  out.is_section = compose(g.s, phi) == Mor::identity(g.G0);
  out.is_bisection = out.is_section && is_iso(compose(g.r, phi));
  if (out.is_section) out.ad = Ad(g, phi);
  return out;
}

Mor section_product(const Groupoid& g, const Mor& phi1, const Mor& phi2) {
  Mor a = rebase(phi1, g.G0, g.G1), b = rebase(phi2, g.G0, g.G1);
  std::vector<int> t(g.objects());
  for (int x = 0; x < in(g.objects()); ++x) {
    t[ix(x)] = g.mul(a(g.r(b(x))), b(x));
    if (t[ix(x)] < 0) throw Error(ErrorKind::NotASection, "section product of non-sections", g.G0.id(x));
  }
  return Mor(g.G0, g.G1, std::move(t));
}

std::optional<Mor> section_inverse(const Groupoid& g, const Mor& phi0) {
  Mor phi = rebase(phi0, g.G0, g.G1);
  auto alpha_inv = inverse(compose(g.r, phi));
  if (!alpha_inv) return std::nullopt;
  return compose(g.i, compose(phi, *alpha_inv));
}

// ---- essential surjectivity and full faithfulness

Surjectivity functor_surjectivity_tests(const Functor& F) {
  const Groupoid& G = F.src;
  const Groupoid& H = F.dst;
  Surjectivity out;
  FibreProduct left = fibre_product(F.F0, H.r);  // (x, h) with F0(x) = r(h)
  Mor es = compose(H.s, left.pr2);
  out.essentially_surjective = is_cover(es);
  if (!out.essentially_surjective) {
    Subset img = image(es, es.dom().all());
    for (std::size_t y = 0; y < H.objects() && out.es_witness.empty(); ++y)
      if (!img.test(y)) out.es_witness = H.G0.id(in(y)) + " is not isomorphic to any F0(x)";
    if (out.es_witness.empty()) out.es_witness = "the map (x, h) -> s(h) is not open";
  }
  FibreProduct outer = fibre_product(es, F.F0);
  std::vector<int> t(G.arrows());
  for (int g = 0; g < in(G.arrows()); ++g) t[ix(g)] = outer.at(left.at(G.r(g), F.F1(g)), G.s(g));
  Mor ff = Mor::trusted(G.G1, outer.apex, std::move(t));
  out.fully_faithful = is_iso(ff);
  if (!out.fully_faithful) out.ff_witness = bijection_witness(ff);
  return out;
}

namespace {

// covers U -> H0 with |U| <= |H0| + extra; stops when visit returns true
bool any_cover_into(const Obj& H0, std::size_t extra, const std::function<bool(const Mor&)>& visit) {
  for (std::size_t m = 1; m <= H0.size() + extra; ++m) {
    std::vector<Obj> carriers;
    if (H0.backend() == Backend::FinSet) carriers.push_back(Obj::finset(numbered_ids(m)));
    else carriers = all_topologies(numbered_ids(m));
    for (const Obj& U : carriers)
      for (const Mor& g : all_maps(U, H0))
        if (is_cover(g) && visit(g)) return true;
  }
  return H0.empty() && visit(Mor::identity(H0));
}

}  // namespace

bool almost_essentially_surjective(const Functor& F, std::size_t extra) {
  FibreProduct left = fibre_product(F.F0, F.dst.r);
  Mor es = compose(F.dst.s, left.pr2);
  return any_cover_into(F.dst.G0, extra, [&](const Mor& g) { return is_cover(fibre_product(es, g).pr2); });
}

bool almost_fully_faithful(const Functor& F, std::size_t extra) {
  return any_cover_into(F.dst.G0, extra,
                        [&](const Mor& q) { return functor_surjectivity_tests(pullback_functor(F, q).F).fully_faithful; });
}

// ---- anafunctors

Anafunctor anafunctor_over(const Groupoid& H, const PullbackGroupoid& pb, const Mor& F0, const Mor& F1) {
  Anafunctor a;
  a.src = pb.hyper.dst;
  a.dst = H;
  a.pb = pb;
  a.F = Functor{pb.g, H, rebase(F0, pb.g.G0, H.G0), rebase(F1, pb.g.G1, H.G1)};
  return a;
}

Anafunctor make_anafunctor(const Groupoid& G, const Groupoid& H, const Mor& p, const Mor& F0,
                           const std::function<int(int, int, int)>& F1) {
  PullbackGroupoid pb = pullback_groupoid(G, p);
  std::vector<int> t(pb.g.arrows());
  for (int k = 0; k < in(t.size()); ++k) t[ix(k)] = F1(pb.first(k), pb.middle(k), pb.last(k));
  return anafunctor_over(H, pb, F0, Mor(pb.g.G1, H.G1, std::move(t)));
}

ValidationReport validate_anafunctor(const Anafunctor& a) {
  ValidationReport rep;
  rep.add("cover", "p: X -> G0 is a cover", is_cover(a.p()), is_cover(a.p()) ? "" : a.p().show());
  rep.merge(validate_functor(a.F), "functor");
  return rep;
}

Anafunctor identity_anafunctor(const Groupoid& g) {
  Mor id = Mor::identity(g.G0);
  return make_anafunctor(g, g, id, id, [](int, int h, int) { return h; });
}

Anafunctor functor_to_anafunctor(const Functor& F) {
  return make_anafunctor(F.src, F.dst, Mor::identity(F.src.G0), F.F0, [&](int, int h, int) { return F.F1(h); });
}

Anafunctor compose_anafunctors(const Anafunctor& b, const Anafunctor& a) {
  require(a.dst == b.src, "anafunctors are not composable");
  auto parts = std::make_shared<const FibreProduct>(fibre_product(a.F.F0, rebase(b.p(), b.X(), a.F.F0.cod())));
  Mor p13 = compose(a.p(), parts->pr1);
  if (!is_cover(p13)) throw Error(ErrorKind::NotACover, "composite anafunctor leg is not a cover", p13.show());
  const auto& P = parts->pairs;
  Anafunctor out = make_anafunctor(a.src, b.dst, p13, compose(b.F.F0, parts->pr2), [&](int k1, int g, int k2) {
    auto [x1, x2] = P[ix(k1)];
    auto [x3, x4] = P[ix(k2)];
    return b.F1(x2, a.F1(x1, g, x3), x4);
  });
  out.parts = parts;
  out.first = std::make_shared<const Anafunctor>(a);
  out.second = std::make_shared<const Anafunctor>(b);
  return out;
}

bool same_anafunctor(const Anafunctor& a, const Anafunctor& b) {
  if (!(a.X() == b.X()) || !(a.src == b.src) || !(a.dst == b.dst)) return false;
  return a.p() == b.p() && a.F.F0 == b.F.F0 && a.F.F1 == b.F.F1;
}

bool is_anafunctor_iso(const Anafunctor& a, const Anafunctor& b, const Mor& phi0) {
  if (!(a.src == b.src) || !(a.dst == b.dst)) return false;
  if (!(phi0.dom() == a.X()) || !(phi0.cod() == b.X())) return false;
  Mor phi = rebase(phi0, a.X(), b.X());
  if (!is_iso(phi)) return false;
  for (int x = 0; x < in(a.X().size()); ++x)
    if (b.p()(phi(x)) != a.p()(x) || b.F.F0(phi(x)) != a.F.F0(x)) return false;
  for (int k = 0; k < in(a.pb.g.arrows()); ++k) {
    int t = b.pb.triple(phi(a.pb.first(k)), a.pb.middle(k), phi(a.pb.last(k)));
    if (t < 0 || b.F.F1(t) != a.F.F1(k)) return false;
  }
  return true;
}

Mor associator(const Anafunctor& c_ba, const Anafunctor& cb_a) {
  require(c_ba.parts && c_ba.first && c_ba.first->parts, "associator needs c(ba)");
  require(cb_a.parts && cb_a.second && cb_a.second->parts, "associator needs (cb)a");
  const FibreProduct& outer_l = *c_ba.parts;           // (k_ba, x3)
  const FibreProduct& inner_l = *c_ba.first->parts;    // (x1, x2)
  const FibreProduct& outer_r = *cb_a.parts;           // (x1, k_cb)
  const FibreProduct& inner_r = *cb_a.second->parts;   // (x2, x3)
  std::vector<int> t(outer_l.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto [kba, x3] = outer_l.pairs[k];
    auto [x1, x2] = inner_l.pairs[ix(kba)];
    int kcb = inner_r.find(x2, x3);
    t[k] = kcb < 0 ? -1 : outer_r.find(x1, kcb);
    if (t[k] < 0) throw Error(ErrorKind::BoundaryMismatch, "associator: bracketings do not match");
  }
  return Mor(c_ba.X(), cb_a.X(), std::move(t));
}

Mor left_unitor(const Anafunctor& id_after_a) {
  require(id_after_a.parts && id_after_a.first, "unitor needs a composite");
  return rebase(id_after_a.parts->pr1, id_after_a.X(), id_after_a.first->X());
}

Mor right_unitor(const Anafunctor& a_after_id) {
  require(a_after_id.parts && a_after_id.second, "unitor needs a composite");
  return rebase(a_after_id.parts->pr2, a_after_id.X(), a_after_id.second->X());
}

// ---- anafunctor natural transformations

AnaNat make_ananat(const Anafunctor& from, const Anafunctor& to, const std::function<int(int, int)>& phi) {
  require(from.src == to.src && from.dst == to.dst, "anafunctors are not parallel");
  AnaNat n{from, to, std::make_shared<const FibreProduct>(fibre_product(from.p(), rebase(to.p(), to.X(), from.p().cod()))), {}};
  std::vector<int> t(n.joint->size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = phi(n.joint->pairs[k].first, n.joint->pairs[k].second);
  n.phi = Mor(n.joint->apex, from.dst.G1, std::move(t));
  return n;
}

namespace {

std::vector<NatEdge> ananat_edges(const Anafunctor& from, const Anafunctor& to, const FibreProduct& joint) {
  const Groupoid& G = from.src;
  auto hom = homs(G);
  std::vector<NatEdge> edges;
  for (int k = 0; k < in(joint.size()); ++k) {
    auto [x1, x2] = joint.pairs[ix(k)];
    for (int kk = 0; kk < in(joint.size()); ++kk) {
      auto [x3, x4] = joint.pairs[ix(kk)];
      for (int g : hom[ix(from.p()(x1))][ix(from.p()(x3))])
        edges.push_back({k, kk, from.F1(x1, g, x3), to.F1(x2, g, x4)});
    }
  }
  return edges;
}

}  // namespace

ValidationReport validate_ananat(const AnaNat& n) {
  require(n.from.src == n.to.src && n.from.dst == n.to.dst, "anafunctors are not parallel");
  require(n.joint && n.phi.dom() == n.joint->apex && n.phi.cod() == n.from.dst.G1, "transformation boundary");
  const Groupoid& H = n.from.dst;
  const FibreProduct& J = *n.joint;
  Mor phi = rebase(n.phi, J.apex, H.G1);
  ValidationReport rep;
  std::string ws, wr, wn;
  for (int k = 0; k < in(J.size()); ++k) {
    auto [x1, x2] = J.pairs[ix(k)];
    if (ws.empty() && H.s(phi(k)) != n.from.F.F0(x1)) ws = J.apex.id(k);
    if (wr.empty() && H.r(phi(k)) != n.to.F.F0(x2)) wr = J.apex.id(k);
  }
  for (const auto& e : ananat_edges(n.from, n.to, J)) {
    int lhs = H.mul(phi(e.a), e.L), rhs = H.mul(e.R, phi(e.b));
    if (lhs < 0 || lhs != rhs) {
      wn = tuple_str({J.apex.id(e.a), J.apex.id(e.b)});
      break;
    }
  }
  rep.add("source", "s(Phi(x1, x2)) = F1(x1)", ws.empty(), ws);
  rep.add("range", "r(Phi(x1, x2)) = F2(x2)", wr.empty(), wr);
  rep.add("naturality", "Phi(x1, x2) F1(x1, g, x3) = F2(x2, g, x4) Phi(x3, x4)", wn.empty(), wn);
  return rep;
}

AnaNat ananat_from_iso(const Anafunctor& a, const Anafunctor& b, const Mor& phi0) {
  if (!is_anafunctor_iso(a, b, phi0)) throw Error(ErrorKind::InvalidFunctor, "not an isomorphism of anafunctors");
  Mor phi = rebase(phi0, a.X(), b.X());
  const Groupoid& G = a.src;
  return make_ananat(a, b, [&](int x1, int x2) { return b.F1(x2, G.u(b.p()(x2)), phi(x1)); });
}

AnaNat identity_ananat(const Anafunctor& a) { return ananat_from_iso(a, a, Mor::identity(a.X())); }

AnaNat inverse_ananat(const AnaNat& n) {
  const Groupoid& H = n.from.dst;
  return make_ananat(n.to, n.from, [&](int x2, int x1) { return H.i(n.phi(n.joint->at(x1, x2))); });
}

AnaNat compose_ananat(NatMode mode, const AnaNat& a, const AnaNat& b) {
  if (mode == NatMode::Vertical) {
    if (!same_anafunctor(b.to, a.from)) throw Error(ErrorKind::NotComposable, "vertical product needs b.to = a.from");
    const Groupoid& H = a.from.dst;
    const FibreProduct& J12 = *b.joint;
    const FibreProduct& J23 = *a.joint;
    FibreProduct X123 = fibre_product(J12.pr2, rebase(J23.pr1, J23.apex, J12.pr2.cod()));
    AnaNat out = make_ananat(b.from, a.to, [](int, int) { return 0; });
    const FibreProduct& J13 = *out.joint;
    std::vector<int> pr13(X123.size()), val(X123.size());
    for (std::size_t k = 0; k < X123.size(); ++k) {
      auto [k12, k23] = X123.pairs[k];
      pr13[k] = J13.at(J12.pairs[ix(k12)].first, J23.pairs[ix(k23)].second);
      val[k] = H.mul(a.phi(k23), b.phi(k12));
      if (val[k] < 0) throw Error(ErrorKind::DescentFailure, "vertical product: arrows do not compose");
    }
    auto phi = factor_through(Mor::trusted(X123.apex, J13.apex, std::move(pr13)), Mor::trusted(X123.apex, H.G1, std::move(val)));
    if (!phi) throw Error(ErrorKind::DescentFailure, "vertical product does not descend to X1 x X3");
    out.phi = *phi;
    return out;
  }
  // a: E1 => E2 between H -> K, b: F1 => F2 between G -> H
  if (!(b.from.dst == a.from.src)) throw Error(ErrorKind::NotComposable, "horizontal product needs matching groupoids");
  const Anafunctor& E1 = a.from;
  const Anafunctor& F2 = b.to;
  const Groupoid& K = E1.dst;
  Anafunctor from = compose_anafunctors(a.from, b.from);
  Anafunctor to = compose_anafunctors(a.to, b.to);
  AnaNat out = make_ananat(from, to, [](int, int) { return 0; });
  const FibreProduct& J = *out.joint;
  const FibreProduct& P1 = *from.parts;  // (x1, y1)
  const FibreProduct& P2 = *to.parts;    // (x2, y2)
  // enlarge by y1' in Y1 over F2(x2), then descend along the projection
  std::vector<int> over(J.size());
  for (std::size_t k = 0; k < J.size(); ++k) over[k] = F2.F.F0(P2.pairs[ix(J.pairs[k].second)].first);
  FibreProduct ext = fibre_product(Mor::trusted(J.apex, E1.p().cod(), std::move(over)), E1.p());
  std::vector<int> val(ext.size());
  for (std::size_t k = 0; k < ext.size(); ++k) {
    auto [j, y1p] = ext.pairs[k];
    auto [x1, y1] = P1.pairs[ix(J.pairs[ix(j)].first)];
    auto [x2, y2] = P2.pairs[ix(J.pairs[ix(j)].second)];
    int h = b.phi(b.joint->at(x1, x2));
    val[k] = K.mul(a.phi(a.joint->at(y1p, y2)), E1.F1(y1p, h, y1));
    if (val[k] < 0) throw Error(ErrorKind::DescentFailure, "horizontal product: arrows do not compose");
  }
  auto phi = factor_through(ext.pr1, Mor::trusted(ext.apex, K.G1, std::move(val)));
  if (!phi) throw Error(ErrorKind::DescentFailure, "horizontal product does not descend");
  out.phi = *phi;
  return out;
}

bool same_ananat(const AnaNat& a, const AnaNat& b) {
  return same_anafunctor(a.from, b.from) && same_anafunctor(a.to, b.to) && a.phi == b.phi;
}

std::optional<AnaNat> find_ananat(const Anafunctor& from, const Anafunctor& to) {
  AnaNat n = make_ananat(from, to, [&](int, int) { return 0; });
  const FibreProduct& J = *n.joint;
  std::vector<int> src(J.size()), dst(J.size());
  for (std::size_t k = 0; k < J.size(); ++k) {
    src[k] = from.F.F0(J.pairs[k].first);
    dst[k] = to.F.F0(J.pairs[k].second);
  }
  const Groupoid& H = from.dst;
  bool top = H.backend() == Backend::FinTop;
  for (auto& t : solve_nat(H, src, dst, ananat_edges(from, to, J), top ? SIZE_MAX : 1)) {
    if (!continuous(J.apex, H.G1, t)) continue;
    n.phi = Mor::trusted(J.apex, H.G1, std::move(t));
    return n;
  }
  return std::nullopt;
}

// ---- equivalences

EquivalenceResult is_ana_equivalence(const Anafunctor& a) {
  EquivalenceResult out;
  out.tests = functor_surjectivity_tests(a.F);
  out.flag = out.tests.essentially_surjective && out.tests.fully_faithful;
  if (!out.flag) return out;

  const Groupoid& G = a.src;
  const Groupoid& H = a.dst;
  // XHY with Y = H0 and q = id
  FibreProduct left = fibre_product(a.F.F0, H.r);
  FibreProduct xhy = fibre_product(compose(H.s, left.pr2), Mor::identity(H.G0));
  auto x_of = [&](int e) { return left.pairs[ix(xhy.pairs[ix(e)].first)].first; };
  auto h_of = [&](int e) { return left.pairs[ix(xhy.pairs[ix(e)].first)].second; };
  Mor p1 = compose(a.p(), compose(left.pr1, xhy.pr1));
  AnaIso w;
  w.lifted = make_anafunctor(G, H, p1, xhy.pr2, [&](int e1, int g, int e2) {
    return H.mul(H.mul(H.i(h_of(e1)), a.F1(x_of(e1), g, x_of(e2))), h_of(e2));
  });
  w.target = pullback_groupoid(H, w.lifted.F.F0);
  const PullbackGroupoid& L = w.lifted.pb;
  std::vector<int> t(L.g.arrows());
  for (int k = 0; k < in(t.size()); ++k) t[ix(k)] = w.target.triple(L.first(k), w.lifted.F.F1(k), L.last(k));
  Mor iso1(L.g.G1, w.target.g.G1, std::move(t));
  if (!is_iso(iso1)) throw Error(ErrorKind::NotAnEquivalence, "lift to an ana-isomorphism failed", bijection_witness(iso1));
  w.iso = Functor{L.g, w.target.g, Mor::identity(L.g.G0), iso1};
  w.to_original = make_ananat(w.lifted, a, [&](int e, int x2) {
    return H.mul(a.F1(x2, G.u(a.p()(x_of(e))), x_of(e)), h_of(e));
  });
  out.witness = std::move(w);
  return out;
}

std::optional<QuasiInverse> find_quasi_inverse(const Anafunctor& a, std::size_t cap) {
  const Groupoid& G = a.src;
  const Groupoid& H = a.dst;
  const Anafunctor idG = identity_anafunctor(G), idH = identity_anafunctor(H);
  const std::size_t nh = H.objects();
  for (std::size_t n = nh == 0 ? 0 : 1; n <= cap; ++n) {
    Obj Y = Obj::discrete(H.backend(), numbered_ids(n));
    // non-decreasing surjections Y -> H0 represent every cover up to relabelling Y
    std::vector<int> q(n, 0);
    std::function<std::optional<QuasiInverse>(std::size_t)> go = [&](std::size_t i) -> std::optional<QuasiInverse> {
      if (i == n) {
        if (n == 0 ? nh != 0 : q.back() != in(nh) - 1) return std::nullopt;
        Mor qm = Mor::trusted(Y, H.G0, q);
        if (!is_cover(qm)) return std::nullopt;
        PullbackGroupoid pb = pullback_groupoid(H, qm);
        for (const Functor& E : all_functors(pb.g, G)) {
          Anafunctor b = anafunctor_over(G, pb, E.F0, E.F1);
          auto unit = find_ananat(compose_anafunctors(b, a), idG);
          if (!unit) continue;
          auto counit = find_ananat(compose_anafunctors(a, b), idH);
          if (!counit) continue;
          return QuasiInverse{b, *unit, *counit};
        }
        return std::nullopt;
      }
      int lo = i == 0 ? 0 : q[i - 1];
      for (int v = lo; v <= lo + 1 && v < in(nh); ++v) {
        if (i == 0 && v != 0) break;
        q[i] = v;
        if (auto r = go(i + 1)) return r;
      }
      return std::nullopt;
    };
    if (auto r = go(0)) return r;
  }
  return std::nullopt;
}

}  // namespace groupoidal
