#include "groupoidal/nerve.hpp"

#include <algorithm>
#include <functional>

#include "detail.hpp"

namespace groupoidal {

using detail::in;
using detail::ix;
using detail::tuple_str;

namespace {

using Pair = std::array<int, 2>;
using Triple = std::array<int, 3>;

std::string idx(std::initializer_list<int> is) {
  std::string out = "[";
  bool first = true;
  for (int i : is) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "]";
}

[[noreturn]] void mismatch(const std::string& what, const std::string& where) {
  throw Error(ErrorKind::BoundaryMismatch, what, where);
}

// the simplex with every table rebased onto its declared carriers and the m domains computed
struct Prepared {
  const NSimplex* x = nullptr;
  std::map<Pair, Mor> r, s;
  std::map<Triple, FibreProduct> fp;
  std::map<Triple, Mor> m;

  int n() const { return in(x->n); }
};

Prepared prepare(const NSimplex& x, const Triple* skip = nullptr) {
  if (x.X.size() != x.n + 1) mismatch("a simplex has n + 1 vertices", std::to_string(x.n));
  Prepared p;
  p.x = &x;
  int n = in(x.n);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      std::string w = idx({i, j});
      auto xi = x.XX.find({i, j});
      auto ri = x.r.find({i, j});
      auto si = x.s.find({i, j});
      if (xi == x.XX.end() || ri == x.r.end() || si == x.s.end()) mismatch("missing edge data", w);
      const Obj& E = xi->second;
      if (!(ri->second.dom() == E) || !(ri->second.cod() == x.X[ix(i)])) mismatch("r runs from X_ij to X_i", w);
      if (!(si->second.dom() == E) || !(si->second.cod() == x.X[ix(j)])) mismatch("s runs from X_ij to X_j", w);
      p.r.emplace(Pair{i, j}, rebase(ri->second, E, x.X[ix(i)]));
      p.s.emplace(Pair{i, j}, rebase(si->second, E, x.X[ix(j)]));
    }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        Triple t{i, j, k};
        auto f = p.fp.emplace(t, fibre_product(p.s.at({i, j}), p.r.at({j, k}))).first;
        if (skip && *skip == t) continue;
        auto mi = x.m.find(t);
        std::string w = idx({i, j, k});
        if (mi == x.m.end()) mismatch("missing multiplication", w);
        const Obj& cod = x.XX.at({i, k});
        if (!(mi->second.dom() == f->second.apex) || !(mi->second.cod() == cod))
          mismatch("m_ijk runs from X_ij x_{X_j} X_jk to X_ik", w);
        p.m.emplace(t, rebase(mi->second, f->second.apex, cod));
      }
  return p;
}

// x.y for x in X_ij, y in X_jk, or -1
int mul(const Prepared& p, int i, int j, int k, int a, int b) {
  const Triple t{i, j, k};
  int q = p.fp.at(t).find(a, b);
  return q < 0 ? -1 : p.m.at(t)(q);
}

// a table into the apex of T, or nullopt when some value is missing or the map is not continuous
std::optional<Mor> into(const FibreProduct& from, const FibreProduct& T, const std::function<int(int, int)>& f) {
  std::vector<int> t(from.size());
  for (std::size_t q = 0; q < from.size(); ++q) {
    auto [a, b] = from.pairs[q];
    t[q] = f(a, b);
    if (t[q] < 0) return std::nullopt;
  }
  try {
    return Mor(from.apex, T.apex, std::move(t));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// (x, y) -> (x, x.y) into X_ij x_{X_i} X_ik
bool left_shear_iso(const Prepared& p, int i, int j, int k, std::string& w) {
  const FibreProduct& F = p.fp.at({i, j, k});
  FibreProduct T = fibre_product(p.r.at({i, j}), p.r.at({i, k}));
  auto f = into(F, T, [&](int a, int b) {
    int v = mul(p, i, j, k, a, b);
    return v < 0 ? -1 : T.find(a, v);
  });
  if (f && is_iso(*f)) return true;
  w = idx({i, j, k});
  return false;
}

// (x, y) -> (x.y, y) into X_ik x_{X_k} X_jk
bool right_shear_iso(const Prepared& p, int i, int j, int k, std::string& w) {
  const FibreProduct& F = p.fp.at({i, j, k});
  FibreProduct T = fibre_product(p.s.at({i, k}), p.s.at({j, k}));
  auto f = into(F, T, [&](int a, int b) {
    int v = mul(p, i, j, k, a, b);
    return v < 0 ? -1 : T.find(v, b);
  });
  if (f && is_iso(*f)) return true;
  w = idx({i, j, k});
  return false;
}

std::optional<Groupoid> diagonal(const Prepared& p, int i) {
  const Obj& G0 = p.x->X[ix(i)];
  const Obj& G1 = p.x->x(i, i);
  const Mor& r = p.r.at({i, i});
  const Mor& s = p.s.at({i, i});
  std::vector<int> u(G0.size(), -1), inv(G1.size(), -1);
  for (int o = 0; o < in(G0.size()); ++o)
    for (int e = 0; e < in(G1.size()) && u[ix(o)] < 0; ++e)
      if (r(e) == o && s(e) == o && mul(p, i, i, i, e, e) == e) u[ix(o)] = e;
  for (int o : u)
    if (o < 0) return std::nullopt;
  for (int g = 0; g < in(G1.size()); ++g)
    for (int h = 0; h < in(G1.size()) && inv[ix(g)] < 0; ++h)
      if (mul(p, i, i, i, g, h) == u[ix(r(g))] && mul(p, i, i, i, h, g) == u[ix(s(g))]) inv[ix(g)] = h;
  for (int h : inv)
    if (h < 0) return std::nullopt;
  try {
    return make_groupoid(G0, G1, r, s, p.m.at({i, i, i}), Mor(G0, G1, u), Mor(G1, G1, inv));
  } catch (const Error&) {
    return std::nullopt;
  }
}

Bibundle edge(const Prepared& p, const Groupoid& gi, const Groupoid& gk, int i, int k) {
  Action left = make_action(gi, p.r.at({i, k}), Side::Left, [&](int e, int a) { return mul(p, i, i, k, a, e); });
  Action right = make_action(gk, p.s.at({i, k}), Side::Right, [&](int e, int h) { return mul(p, i, k, k, e, h); });
  return make_bibundle(left, right);
}

ValidationReport conditions(const Prepared& p, bool derived) {
  ValidationReport rep;
  const int n = p.n();
  bool base_ok = true;
  auto add = [&](const std::string& check, const std::string& ref, bool pass, const std::string& w = {}) {
    rep.add(check, ref, pass, w);
    base_ok = base_ok && pass;
  };
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) add("r-cover" + idx({i, j}), "r_ij is a cover", is_cover(p.r.at({i, j})));
  for (int i = 0; i <= n; ++i) add("s-cover" + idx({i}), "s_ii is a cover", is_cover(p.s.at({i, i})));

  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        const FibreProduct& F = p.fp.at({i, j, k});
        const Mor& m = p.m.at({i, j, k});
        std::string w;
        for (std::size_t q = 0; q < F.size() && w.empty(); ++q) {
          auto [a, b] = F.pairs[q];
          int v = m(in(q));
          if (p.r.at({i, k})(v) != p.r.at({i, j})(a) || p.s.at({i, k})(v) != p.s.at({j, k})(b)) w = F.apex.id(in(q));
        }
        add("boundary" + idx({i, j, k}), "r(x y) = r(x) and s(x y) = s(y)", w.empty(), w);
      }

  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
          const FibreProduct& A = p.fp.at({i, j, k});
          const FibreProduct& B = p.fp.at({j, k, l});
          std::string w;
          for (std::size_t q = 0; q < A.size() && w.empty(); ++q) {
            auto [a, b] = A.pairs[q];
            for (std::size_t t = 0; t < B.size() && w.empty(); ++t) {
              if (B.pairs[t].first != b) continue;
              int c = B.pairs[t].second;
              int ab = mul(p, i, j, k, a, b), bc = mul(p, j, k, l, b, c);
              int lhs = ab < 0 ? -1 : mul(p, i, k, l, ab, c);
              int rhs = bc < 0 ? -1 : mul(p, i, j, l, a, bc);
              if (lhs < 0 || lhs != rhs)
                w = tuple_str({p.x->x(i, j).id(a), p.x->x(j, k).id(b), p.x->x(k, l).id(c)});
            }
          }
          add("assoc" + idx({i, j, k, l}), "(x y) z = x (y z)", w.empty(), w);
        }

  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        if (i == j || j == k) {
          std::string w;
          add("shear-left" + idx({i, j, k}), "(x, y) -> (x, x y) is an isomorphism", left_shear_iso(p, i, j, k, w), w);
        }
        if (j == k) {
          std::string w;
          add("shear-right" + idx({i, j, k}), "(x, y) -> (x y, y) is an isomorphism", right_shear_iso(p, i, j, k, w), w);
        }
      }
  if (!derived) return rep;

  std::vector<std::optional<Groupoid>> gs;
  for (int i = 0; i <= n; ++i) {
    gs.push_back(base_ok ? diagonal(p, i) : std::nullopt);
    bool ok = gs.back() && validate_groupoid(*gs.back()).ok();
    if (!ok) gs.back().reset();
    rep.add("groupoid" + idx({i}), "the diagonal data form a groupoid", ok);
  }
  std::map<Pair, Bibundle> edges;
  for (int i = 0; i <= n; ++i)
    for (int k = i; k <= n; ++k) {
      bool ok = false;
      if (gs[ix(i)] && gs[ix(k)]) {
        try {
          Bibundle b = edge(p, *gs[ix(i)], *gs[ix(k)], i, k);
          ok = validate_bibundle(b).ok() && classify(b).is_functor;
          if (ok) edges.emplace(Pair{i, k}, b);
        } catch (const Error&) {
        }
      }
      rep.add("functor" + idx({i, k}), "X_ik is a bibundle functor", ok);
    }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        bool ok = false;
        std::string w;
        if (edges.count({i, j}) && edges.count({j, k}) && edges.count({i, k})) {
          try {
            auto res = composite_witness(edges.at({i, j}), edges.at({j, k}), edges.at({i, k}), p.m.at({i, j, k}));
            ok = res.flag;
          } catch (const Error& e) {
            w = e.what();
          }
        }
        rep.add("composite-iso" + idx({i, j, k}), "m_ijk induces X_ij x_{G_j} X_jk = X_ik", ok, w);
      }
  return rep;
}

}  // namespace

bool operator==(const NSimplex& a, const NSimplex& b) {
  return a.n == b.n && a.X == b.X && a.XX == b.XX && a.r == b.r && a.s == b.s && a.m == b.m;
}

ValidationReport validate_simplex(const NSimplex& x) { return conditions(prepare(x), true); }

std::optional<Groupoid> diagonal_groupoid(const NSimplex& x, int i) {
  detail::require(i >= 0 && ix(i) <= x.n, "vertex index in range");
  return diagonal(prepare(x), i);
}

Bibundle edge_bibundle(const NSimplex& x, int i, int k) {
  detail::require(i >= 0 && i <= k && ix(k) <= x.n, "edge index in range");
  Prepared p = prepare(x);
  auto gi = diagonal(p, i), gk = diagonal(p, k);
  detail::require(gi && gk, "the diagonal data form groupoids");
  return edge(p, *gi, *gk, i, k);
}

ValidationReport validate_equivalence_simplex(const NSimplex& x) {
  Prepared p = prepare(x);
  ValidationReport rep = conditions(p, false);
  const int n = p.n();
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      rep.add("s-cover" + idx({i, j}), "s_ij is a cover", is_cover(p.s.at({i, j})));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        std::string w;
        if (!(i == j || j == k))
          rep.add("shear-left" + idx({i, j, k}), "(x, y) -> (x, x y) is an isomorphism", left_shear_iso(p, i, j, k, w), w);
        if (j != k)
          rep.add("shear-right" + idx({i, j, k}), "(x, y) -> (x y, y) is an isomorphism", right_shear_iso(p, i, j, k, w), w);
      }
  return rep;
}

NSimplex restrict_simplex(const std::vector<int>& phi, const NSimplex& x) {
  if (phi.empty()) throw Error(ErrorKind::NotMonotone, "phi needs at least one value");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] < 0 || ix(phi[i]) > x.n) throw Error(ErrorKind::NotMonotone, "phi leaves [m]", std::to_string(phi[i]));
    if (i > 0 && phi[i] < phi[i - 1])
      throw Error(ErrorKind::NotMonotone, "phi is not order-preserving", std::to_string(i));
  }
  NSimplex out;
  out.n = phi.size() - 1;
  const int n = in(out.n);
  for (int i = 0; i <= n; ++i) out.X.push_back(x.X.at(ix(phi[ix(i)])));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Pair q{phi[ix(i)], phi[ix(j)]};
      out.XX.emplace(Pair{i, j}, x.XX.at(q));
      out.r.emplace(Pair{i, j}, x.r.at(q));
      out.s.emplace(Pair{i, j}, x.s.at(q));
      for (int k = j; k <= n; ++k) out.m.emplace(Triple{i, j, k}, x.m.at({phi[ix(i)], phi[ix(j)], phi[ix(k)]}));
    }
  return out;
}

NSimplex reverse_simplex(const NSimplex& x) {
  Prepared p = prepare(x);
  const int n = p.n();
  NSimplex out;
  out.n = x.n;
  for (int i = 0; i <= n; ++i) out.X.push_back(x.X[ix(n - i)]);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Pair q{n - j, n - i};
      out.XX.emplace(Pair{i, j}, x.XX.at(q));
      out.r.emplace(Pair{i, j}, p.s.at(q));
      out.s.emplace(Pair{i, j}, p.r.at(q));
    }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        FibreProduct F = fibre_product(out.s.at({i, j}), out.r.at({j, k}));
        std::vector<int> t(F.size());
        for (std::size_t q = 0; q < F.size(); ++q) {
          auto [a, b] = F.pairs[q];
          t[q] = mul(p, n - k, n - j, n - i, b, a);
          if (t[q] < 0) mismatch("reversed product undefined", F.apex.id(in(q)));
        }
        out.m.emplace(Triple{i, j, k}, Mor(F.apex, out.XX.at({i, k}), std::move(t)));
      }
  return out;
}

NSimplex simplex0(const Groupoid& g) {
  NSimplex out;
  out.n = 0;
  out.X = {g.G0};
  out.XX.emplace(Pair{0, 0}, g.G1);
  out.r.emplace(Pair{0, 0}, g.r);
  out.s.emplace(Pair{0, 0}, g.s);
  out.m.emplace(Triple{0, 0, 0}, g.m);
  return out;
}

NSimplex simplex1(const Bibundle& x) { return simplex_from({{Pair{0, 1}, x}}, {}); }

NSimplex simplex_from(const std::map<Pair, Bibundle>& edges, const std::map<Triple, Mor>& inner) {
  detail::require(!edges.empty(), "at least one edge");
  int n = 0;
  for (const auto& [e, b] : edges) {
    detail::require(e[0] >= 0 && e[0] < e[1], "edges (i, j) with i < j");
    n = std::max(n, e[1]);
  }
  std::vector<std::optional<Groupoid>> gs(ix(n + 1));
  auto put = [&](int i, const Groupoid& g) {
    if (gs[ix(i)] && !(*gs[ix(i)] == g)) mismatch("edges disagree on a vertex groupoid", std::to_string(i));
    gs[ix(i)] = g;
  };
  for (const auto& [e, b] : edges) {
    put(e[0], b.g());
    put(e[1], b.h());
  }
  NSimplex out;
  out.n = ix(n);
  std::map<Pair, Bibundle> all;
  for (int i = 0; i <= n; ++i) {
    if (!gs[ix(i)]) mismatch("vertex without a groupoid", std::to_string(i));
    out.X.push_back(gs[ix(i)]->G0);
    all.emplace(Pair{i, i}, unit_bibundle(*gs[ix(i)]));
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto it = edges.find({i, j});
      if (it == edges.end()) mismatch("missing edge", idx({i, j}));
      all.emplace(Pair{i, j}, it->second);
    }
  for (const auto& [e, b] : all) {
    out.XX.emplace(e, b.X());
    out.r.emplace(e, b.r());
    out.s.emplace(e, b.s());
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        Triple t{i, j, k};
        if (i == j) {
          out.m.emplace(t, all.at({j, k}).left.mult);
        } else if (j == k) {
          out.m.emplace(t, all.at({i, j}).right.mult);
        } else {
          auto it = inner.find(t);
          if (it != inner.end()) out.m.emplace(t, it->second);
        }
      }
  return out;
}

NSimplex horn_fill_inner2(const Bibundle& x01, const Bibundle& x12) {
  if (!(x01.h() == x12.g())) throw Error(ErrorKind::MiddleMismatch, "the edges of the horn do not meet");
  Composite c = compose_bibundles(x01, x12);
  return simplex_from({{Pair{0, 1}, x01}, {Pair{1, 2}, x12}, {Pair{0, 2}, c.bib}},
                      {{Triple{0, 1, 2}, rebase(c.quot.proj, c.pairs->apex, c.bib.X())}});
}

NSimplex chain_simplex(const std::vector<Bibundle>& chain) {
  detail::require(!chain.empty(), "a chain has at least one bibundle");
  const int n = in(chain.size());
  // comp[{i, j}] composes X_{i,j-1} with chain[j-1]; reps[{i, j}][e] is a composable tuple for e in X_ij
  std::map<Pair, Composite> comp;
  std::map<Pair, Bibundle> edges;
  std::map<Pair, std::vector<std::vector<int>>> reps;
  for (int i = 0; i < n; ++i) {
    edges.emplace(Pair{i, i + 1}, chain[ix(i)]);
    auto& r = reps[{i, i + 1}];
    for (int e = 0; e < in(chain[ix(i)].X().size()); ++e) r.push_back({e});
    for (int j = i + 2; j <= n; ++j) {
      Composite c = compose_bibundles(edges.at({i, j - 1}), chain[ix(j - 1)]);
      auto& rj = reps[{i, j}];
      for (const auto& cls : c.quot.classes) {
        auto [a, e] = c.pairs->pairs[ix(cls.front())];
        std::vector<int> t = reps.at({i, j - 1})[ix(a)];
        t.push_back(e);
        rj.push_back(std::move(t));
      }
      edges.emplace(Pair{i, j}, c.bib);
      comp.emplace(Pair{i, j}, std::move(c));
    }
  }
  auto fold = [&](int i, const std::vector<int>& t) {
    int v = t.front();
    for (std::size_t q = 1; q < t.size(); ++q) v = comp.at({i, i + in(q) + 1}).cls(v, t[q]);
    return v;
  };
  std::map<Triple, Mor> inner;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        const Bibundle& a = edges.at({i, j});
        const Bibundle& b = edges.at({j, k});
        FibreProduct F = fibre_product(a.s(), b.r());
        std::vector<int> t(F.size());
        for (std::size_t q = 0; q < F.size(); ++q) {
          auto [x, y] = F.pairs[q];
          std::vector<int> word = reps.at({i, j})[ix(x)];
          const auto& tail = reps.at({j, k})[ix(y)];
          word.insert(word.end(), tail.begin(), tail.end());
          t[q] = fold(i, word);
          if (t[q] < 0) mismatch("representatives do not compose", F.apex.id(in(q)));
        }
        inner.emplace(Triple{i, j, k}, Mor(F.apex, edges.at({i, k}).X(), std::move(t)));
      }
  return simplex_from(edges, inner);
}

FillerSearch find_fillers(const NSimplex& x, Triple missing, std::size_t budget) {
  auto [i, j, k] = missing;
  detail::require(0 <= i && i <= j && j <= k && ix(k) <= x.n, "missing triple in range");
  FillerSearch out;
  Prepared p;
  try {
    p = prepare(x, &missing);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BoundaryMismatch) throw;
    out.rejected = e.what();
    return out;
  }
  const FibreProduct& F = p.fp.at(missing);
  const Obj& cod = x.x(i, k);
  // condition (3) leaves only values over the right endpoints
  std::vector<std::vector<int>> choices(F.size());
  for (std::size_t q = 0; q < F.size(); ++q) {
    auto [a, b] = F.pairs[q];
    for (int v = 0; v < in(cod.size()); ++v)
      if (p.r.at({i, k})(v) == p.r.at({i, j})(a) && p.s.at({i, k})(v) == p.s.at({j, k})(b)) choices[q].push_back(v);
    if (choices[q].empty()) return out;
  }

  // associativity instances that mention the missing multiplication; checked as soon as they are decided
  std::vector<int> assign(F.size(), -2);
  auto val = [&](int i1, int j1, int k1, int a, int b) {
    if (Triple{i1, j1, k1} == missing) {
      int q = F.find(a, b);
      return q < 0 ? -1 : assign[ix(q)];
    }
    return mul(p, i1, j1, k1, a, b);
  };
  struct Instance {
    int i, j, k, l, a, b, c;
  };
  std::vector<Instance> inst;
  const int n = p.n();
  for (int i1 = 0; i1 <= n; ++i1)
    for (int j1 = i1; j1 <= n; ++j1)
      for (int k1 = j1; k1 <= n; ++k1)
        for (int l1 = k1; l1 <= n; ++l1) {
          Triple t1{i1, j1, k1}, t2{i1, k1, l1}, t3{j1, k1, l1}, t4{i1, j1, l1};
          if (t1 != missing && t2 != missing && t3 != missing && t4 != missing) continue;
          const FibreProduct& A = p.fp.at(t1);
          const FibreProduct& B = p.fp.at(t3);
          for (const auto& [a, b] : A.pairs)
            for (const auto& [b2, c] : B.pairs)
              if (b2 == b) inst.push_back({i1, j1, k1, l1, a, b, c});
        }
  // false only when the instance is decided and fails
  auto holds = [&](const Instance& t) {
    int ab = val(t.i, t.j, t.k, t.a, t.b), bc = val(t.j, t.k, t.l, t.b, t.c);
    if (ab == -2 || bc == -2) return true;
    if (ab < 0 || bc < 0) return false;
    int lhs = val(t.i, t.k, t.l, ab, t.c), rhs = val(t.i, t.j, t.l, t.a, bc);
    if (lhs == -2 || rhs == -2) return true;
    return lhs >= 0 && lhs == rhs;
  };

  NSimplex y = x;
  std::size_t nodes = 0;
  std::function<void(std::size_t)> dfs = [&](std::size_t q) {
    if (q == F.size()) {
      ++out.candidates;
      std::vector<int> t(assign.begin(), assign.end());
      try {
        Mor m(F.apex, cod, std::move(t));
        y.m.insert_or_assign(missing, m);
        if (validate_simplex(y).ok()) out.fillers.push_back(m);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidMor) throw;
      }
      return;
    }
    for (int v : choices[q]) {
      if (++nodes > budget) throw Error(ErrorKind::BudgetExceeded, "filler search", std::to_string(nodes));
      assign[q] = v;
      bool ok = true;
      for (const auto& t : inst)
        if (!holds(t)) {
          ok = false;
          break;
        }
      if (ok) dfs(q + 1);
    }
    assign[q] = -2;
  };
  dfs(0);
  return out;
}

FillerSearch unique_inner3_check(const NSimplex& x, Triple missing) {
  detail::require(x.n == 3, "inner 3-horns live in 3-simplices");
  detail::require(missing == Triple{0, 1, 3} || missing == Triple{0, 2, 3}, "the missing multiplication is m_013 or m_023");
  return find_fillers(x, missing);
}

}  // namespace groupoidal
