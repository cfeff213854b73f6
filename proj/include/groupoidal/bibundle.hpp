#ifndef GROUPOIDAL_BIBUNDLE_HPP
#define GROUPOIDAL_BIBUNDLE_HPP

#include "groupoidal/bundle.hpp"
#include "groupoidal/morphism.hpp"

namespace groupoidal {

// A G,H-bibundle: commuting left G- and right H-actions on one carrier.
// r is the left anchor, s the right one.
struct Bibundle {
  Action left, right;

  const Groupoid& g() const { return left.g; }
  const Groupoid& h() const { return right.g; }
  const Obj& X() const { return left.X; }
  const Mor& r() const { return left.anchor; }
  const Mor& s() const { return right.anchor; }
  // -1 when undefined
  int lact(int a, int x) const { return left.act(x, a); }
  int ract(int x, int b) const { return right.act(x, b); }
};

bool operator==(const Bibundle& a, const Bibundle& b);
inline bool operator!=(const Bibundle& a, const Bibundle& b) { return !(a == b); }

Bibundle make_bibundle(const Action& left, const Action& right);
ValidationReport validate_bibundle(const Bibundle& x);
// G1 with left and right multiplication
Bibundle unit_bibundle(const Groupoid& g);
// h.x.g := g^-1.x.h^-1
Bibundle dual(const Bibundle& x);
// H1 with the actor on the left and right multiplication
Bibundle actor_bibundle(const Actor& a);

struct BibundleClass {
  bool is_functor = false;
  bool is_covering = false;
  bool is_actor = false;
  bool is_equivalence = false;
  ValidationReport report;
};
BibundleClass classify(const Bibundle& x);

// ---- G,H-maps

struct BiMap {
  Bibundle from, to;
  Mor f;
};
ValidationReport validate_bimap(const BiMap& m);
bool is_bimap(const Bibundle& a, const Bibundle& b, const Mor& f);
// every G,H-map a -> b; one choice per two-sided orbit, propagated
std::vector<Mor> all_bimaps(const Bibundle& a, const Bibundle& b, std::size_t limit = SIZE_MAX);
std::optional<Mor> find_bimap_iso(const Bibundle& a, const Bibundle& b);

// ---- descent along a quotient

// an action whose anchor and multiplication are constant on the classes of q
Action descend_action(const Action& a, const Coequalizer& q);

// ---- functors and anafunctors

// F*(Y) = G0 x_{F0,H0,r} Y for an H,K-bibundle Y; g.(x, y) = (r g, F1(g) y)
struct PulledBibundle {
  Bibundle bib;
  std::shared_ptr<const FibreProduct> fp;
};
PulledBibundle pull_bibundle(const Functor& F, const Bibundle& y);
// X_F = F*(H1)
PulledBibundle functor_to_bibundle(const Functor& F);

// G |x X x| H: arrows (g, x, h) from x.h to g.x
struct TwoSidedGroupoid {
  Groupoid g;
  std::shared_ptr<const FibreProduct> gx, gxh;  // G1 x_{s,r} X, then (..) x_{s,r} H1

  int arrow(int a, int x, int b) const {
    int k = gx->find(a, x);
    return k < 0 ? -1 : gxh->find(k, b);
  }
  int first(int k) const { return gx->pairs[static_cast<std::size_t>(gxh->pairs[static_cast<std::size_t>(k)].first)].first; }
  int middle(int k) const { return gx->pairs[static_cast<std::size_t>(gxh->pairs[static_cast<std::size_t>(k)].first)].second; }
  int last(int k) const { return gxh->pairs[static_cast<std::size_t>(k)].second; }
};
TwoSidedGroupoid two_sided_groupoid(const Bibundle& x);

struct BibundleAnafunctor {
  Anafunctor ana;       // (X, r, F_X)
  TwoSidedGroupoid gxh;
  Functor iso;          // G |x X x| H -> G(X), (g, x, h) -> (g x, g, x h)
  ValidationReport report;
};
// throws NotABibundleFunctor
BibundleAnafunctor bibundle_to_anafunctor(const Bibundle& x);

// (G1 x_{s,p} X x_{F0,r} H1) / G(X)
struct BetaBibundle {
  Bibundle bib;
  std::shared_ptr<const FibreProduct> gx, gxh;
  Action diagonal;  // right G(X)-action on the triples
  Coequalizer quot;

  int triple(int a, int x, int b) const {
    int k = gx->find(a, x);
    return k < 0 ? -1 : gxh->find(k, b);
  }
  int first(int k) const { return gx->pairs[static_cast<std::size_t>(gxh->pairs[static_cast<std::size_t>(k)].first)].first; }
  int middle(int k) const { return gx->pairs[static_cast<std::size_t>(gxh->pairs[static_cast<std::size_t>(k)].first)].second; }
  int last(int k) const { return gxh->pairs[static_cast<std::size_t>(k)].second; }
};
BetaBibundle beta_ana_to_bibundle(const Anafunctor& a);
// beta(X, r, F_X) -> X, [g, x, h] -> g x h
BiMap beta_counit(const Bibundle& x);
// Psi(x~, [g, x, h]) = F1(x~, g, x) h from the anafunctor of beta(a) to a
AnaNat beta_unit(const Anafunctor& a);

// ---- composition

struct Composite {
  Bibundle bib;
  Bibundle x, y;
  std::shared_ptr<const FibreProduct> pairs;  // X x_{s,H0,r} Y
  Action diagonal;                            // (x, y).h = (x h, h^-1 y)
  Coequalizer quot;

  int cls(int a, int b) const {
    int k = pairs->find(a, b);
    return k < 0 ? -1 : quot.proj(k);
  }
};
// throws MiddleMismatch, NotComposable
Composite compose_bibundles(const Bibundle& x, const Bibundle& y);

// (x y) z -> x (y z), lifted by ((x, y), z) -> (x, (y, z))
BiMap associator(const Composite& xy, const Composite& xy_z, const Composite& yz, const Composite& x_yz);
// X x_H H1 -> X, [x, h] -> x h
BiMap right_unitor(const Composite& x_unit);
// G1 x_G Y -> Y, [g, y] -> g y
BiMap left_unitor(const Composite& unit_y);
// f x_H g: [x, y] -> [f x, g y]
BiMap horizontal(const Composite& from, const Composite& to, const Mor& f, const Mor& g);
BiMap identity_bimap(const Bibundle& x);
// f after g
BiMap compose_bimaps(const BiMap& f, const BiMap& g);

// X_{F2} x_H X_{F1} -> X_{F1 F2}, [(x, h), (y, k)] -> (x, F1(h) k)
BiMap functor_composite_iso(const Functor& F2, const Functor& F1);

struct InverseIsos {
  Composite xx, xx_dual;  // X x_H X*, X* x_G X
  BiMap iso1, iso2;       // onto G1 and H1
};
// throws NotAnEquivalence
InverseIsos check_inverse(const Bibundle& x);

struct WitnessResult {
  bool flag = false;
  ValidationReport report;
  std::optional<Mor> induced;  // X x_H Y -> W
};
// m: X x_{s,H0,r} Y -> W an H-invariant G,K-map
WitnessResult composite_witness(const Bibundle& x, const Bibundle& y, const Bibundle& w, const Mor& m);

// ---- actions and actors

struct ActedOn {
  Action action;                              // left G-action on X x_H Y
  std::shared_ptr<const FibreProduct> pairs;  // X x_{s,H0,anchor} Y
  Action diagonal;
  Coequalizer quot;
};
// y a left H-action (right ones are converted); throws NotAnActor
ActedOn act_on(const Bibundle& x, const Action& y);
// [x, y] -> [x, f y] for an H-map f: y1 -> y2
Mor act_on_map(const ActedOn& a1, const ActedOn& a2, const Mor& f);

struct ActorDecomposition {
  Groupoid k;
  Actor actor;     // G -> K
  Bibundle equiv;  // K -> H on X
  Coequalizer objects, arrows;  // X -> X/H, X x_{s,s} X -> K1
  std::shared_ptr<const FibreProduct> pairs;
  Composite recomposed;  // K1 x_K X
  BiMap iso;             // onto x
};
// throws NotAnActor
ActorDecomposition decompose_actor(const Bibundle& x);

struct Imprimitivity {
  Action on_right_orbits;  // G on X/H
  Action on_left_orbits;   // H on G\X
  Groupoid left_groupoid, right_groupoid;  // G |x (X/H), (G\X) x| H
  Bibundle equiv;
  Coequalizer right_orbits, left_orbits;
};
// throws NotBasic
Imprimitivity imprimitivity(const Bibundle& x);

// ---- quasi-inverses

struct BibundleSearch {
  std::optional<Bibundle> inverse;
  std::optional<BiMap> unit, counit;  // x y -> G1 and y x -> H1
  std::size_t cap = 0;                // effective carrier bound
  std::size_t examined = 0;
};
// bibundle functors H -> G with carrier <= max(cap, |X|), in the backend of x
BibundleSearch find_bibundle_quasi_inverse(const Bibundle& x, std::size_t cap = 4);

// the equivalence X between the 0-groupoid Z and the Cech groupoid of p
Bibundle cover_equivalence(const Mor& p);
// X x_Z Y between the Cech groupoids of p: X -> Z and q: Y -> Z
Bibundle cech_equivalence(const Mor& p, const Mor& q);

}  // namespace groupoidal

#endif
