#ifndef GROUPOIDAL_GROUPOID_HPP
#define GROUPOIDAL_GROUPOID_HPP

#include <memory>
#include <string>
#include <vector>

#include "groupoidal/report.hpp"
#include "groupoidal/site.hpp"

namespace groupoidal {

// (G0, G1, r, s, m, u, i); m lives on the canonical G1 x_{s,G0,r} G1
struct Groupoid {
  Obj G0, G1;
  Mor r, s, m, u, i;
  std::shared_ptr<const FibreProduct> comp;

  Backend backend() const { return G0.backend(); }
  std::size_t objects() const { return G0.size(); }
  std::size_t arrows() const { return G1.size(); }

  int rng(int g) const { return r(g); }
  int src(int g) const { return s(g); }
  int unit(int x) const { return u(x); }
  int inv(int g) const { return i(g); }
  // -1 unless s(g) = r(h)
  int mul(int g, int h) const {
    int k = comp->find(g, h);
    return k < 0 ? -1 : m(k);
  }
  const FibreProduct& composable() const { return *comp; }
};

bool operator==(const Groupoid& a, const Groupoid& b);
inline bool operator!=(const Groupoid& a, const Groupoid& b) { return !(a == b); }

// checks boundaries only; the axioms are left to validate_groupoid
Groupoid make_groupoid(Obj G0, Obj G1, Mor r, Mor s, Mor m, Mor u, Mor i);

ValidationReport validate_groupoid(const Groupoid& g);

// u and i recovered from the multiplication alone
Groupoid from_multiplication(const Obj& G0, const Obj& G1, const Mor& r, const Mor& s, const Mor& m);

Groupoid cech_groupoid(const Mor& p);
Groupoid unit_groupoid(const Obj& x);
Groupoid pair_groupoid(const Obj& x);
// one-object groupoid from a group table: table[a][b] = index of a*b
Groupoid group_groupoid(const std::vector<std::string>& ids, const std::vector<std::vector<int>>& table,
                        Backend b = Backend::FinSet);
Groupoid cyclic_group(std::size_t n, Backend b = Backend::FinSet);

struct Functor {
  Groupoid src, dst;
  Mor F0, F1;
};

struct PullbackGroupoid {
  Groupoid g;
  Functor hyper;  // p_*: objects by p, arrows by the middle projection
  std::shared_ptr<const FibreProduct> left, outer;  // X x_{p,r} G1, then (..) x_{s,p} X

  // coordinates of the arrow (x1, g, x2)
  int first(int k) const { return left->pairs[static_cast<std::size_t>(outer->pairs[static_cast<std::size_t>(k)].first)].first; }
  int middle(int k) const { return left->pairs[static_cast<std::size_t>(outer->pairs[static_cast<std::size_t>(k)].first)].second; }
  int last(int k) const { return outer->pairs[static_cast<std::size_t>(k)].second; }
  // -1 unless p(x1) = r(g) and s(g) = p(x2)
  int triple(int x1, int g, int x2) const {
    int l = left->find(x1, g);
    return l < 0 ? -1 : outer->find(l, x2);
  }
};

PullbackGroupoid pullback_groupoid(const Groupoid& g, const Mor& p);

// the shear maps (x, g) -> (g, x g) and (g, x) -> (g, g x)
Mor shear_left(const Groupoid& g, FibreProduct* target = nullptr);
Mor shear_right(const Groupoid& g, FibreProduct* target = nullptr);

}  // namespace groupoidal

#endif
