#ifndef GROUPOIDAL_ACTION_HPP
#define GROUPOIDAL_ACTION_HPP

#include <functional>
#include <optional>

#include "groupoidal/groupoid.hpp"

namespace groupoidal {

enum class Side { Left, Right };

// right: mult on X x_{anchor,G0,r} G1, (x, g) -> x.g
// left:  mult on G1 x_{s,G0,anchor} X, (g, x) -> g.x
struct Action {
  Groupoid g;
  Obj X;
  Mor anchor;
  Side side = Side::Right;
  std::shared_ptr<const FibreProduct> dom;
  Mor mult;

  // x.a for right actions, a.x for left ones; -1 if not composable
  int act(int x, int a) const {
    int k = side == Side::Right ? dom->find(x, a) : dom->find(a, x);
    return k < 0 ? -1 : mult(k);
  }
  // the element and the arrow of a domain index
  int elem(int k) const {
    const auto& p = dom->pairs[static_cast<std::size_t>(k)];
    return side == Side::Right ? p.first : p.second;
  }
  int arrow(int k) const {
    const auto& p = dom->pairs[static_cast<std::size_t>(k)];
    return side == Side::Right ? p.second : p.first;
  }
};

bool operator==(const Action& a, const Action& b);
inline bool operator!=(const Action& a, const Action& b) { return !(a == b); }

std::shared_ptr<const FibreProduct> action_domain(const Groupoid& g, const Mor& anchor, Side side);
Action make_action(const Groupoid& g, const Mor& anchor, Side side, const Mor& mult);
// f(x, a) is x.a or a.x by side
Action make_action(const Groupoid& g, const Mor& anchor, Side side, const std::function<int(int, int)>& f);

struct ActionCheck {
  ValidationReport report;
  bool is_sheaf = false;
};
ActionCheck validate_action(const Action& a);

// G on G0: anchor id, r(g).g = s(g) (right) or g.s(g) = r(g) (left)
Action canonical_action(const Groupoid& g, Side side = Side::Right);
// G on G1 by multiplication; anchor s for right, r for left
Action multiplication_action(const Groupoid& g, Side side);
// the opposite-handed action, g.x := x.g^-1 and x.g := g^-1.x
Action convert(const Action& a);
bool is_free(const Action& a);

struct GMap {
  Action from, to;
  Mor f;
};
ValidationReport validate_gmap(const GMap& m);
bool is_gmap(const Action& from, const Action& to, const Mor& f);
bool is_invariant(const Action& a, const Mor& f);
std::vector<Mor> all_gmaps(const Action& from, const Action& to);

// X x| G for right actions (range pr1, source m), G |x X for left ones
Groupoid transformation_groupoid(const Action& a);

// every action of g on X of the given side; stops after limit
std::vector<Action> all_actions(const Groupoid& g, const Obj& X, Side side, std::size_t limit = SIZE_MAX);

struct ActionProduct {
  Action action;
  std::shared_ptr<const FibreProduct> fp;
  GMap pr1, pr2;
};
ActionProduct action_fibre_product(const GMap& f1, const GMap& f2);

// an action of X x| G on Y (anchor f: Y -> X) as a G-action on Y, and back
Action restrict_to_groupoid(const Action& y, const Action& x);
Action extend_to_transformation(const Action& y, const Action& x, const Mor& f);
// Y x| (X x| G) -> Y x| G, identity on objects, via (y, (f y, g)) -> (y, g)
Functor nested_transformation_iso(const Action& y_over_xg, const Action& x, const Action& y_over_g);

// ---- actors: a left G-action on H1 commuting with right multiplication

struct Actor {
  Groupoid g, h;
  Action act;
};
bool operator==(const Actor& a, const Actor& b);
inline bool operator!=(const Actor& a, const Actor& b) { return !(a == b); }

ValidationReport validate_actor(const Actor& a);
Actor identity_actor(const Groupoid& h);
// the point group acting trivially on H1
Actor trivial_actor(const Groupoid& h);
// needs F0 invertible
Actor actor_from_functor(const Functor& F);

struct ActorPair {
  Action base;        // left G-action on H0
  Groupoid action;    // G |x H0
  Functor functor;    // G |x H0 -> H, identity on objects
};
ActorPair actor_to_pair(const Actor& a);
Actor pair_to_actor(const Action& base, const Functor& F);
// x a left H-action; g.x := F(g, r(x)).x
Action actor_apply(const Actor& a, const Action& x);
// b after a: G -> H -> K
Actor compose_actors(const Actor& b, const Actor& a);
std::vector<Actor> all_actors(const Groupoid& G, const Groupoid& H, std::size_t limit = SIZE_MAX);

// h -> Phi(r h) h
Mor section_map(const Groupoid& h, const Mor& phi);
// the section of a right H-map H1 -> H1, if it is one
std::optional<Mor> section_of_map(const Groupoid& h, const Mor& f);
bool is_right_hmap(const Groupoid& h, const Mor& f);
// Phi is a 2-arrow m1 => m2
bool is_actor_2arrow(const Actor& m1, const Actor& m2, const Mor& phi);
// x -> Phi(r0_{b1}(x)) .' Psi(x), acting through b2
Mor actor_horizontal(const Actor& b1, const Actor& b2, const Mor& phi, const Mor& psi);

}  // namespace groupoidal

#endif
