#ifndef GROUPOIDAL_BUNDLE_HPP
#define GROUPOIDAL_BUNDLE_HPP

#include "groupoidal/action.hpp"

namespace groupoidal {

// coequalizer of pr_X and m on the action domain
Coequalizer orbit_space(const Action& a);

struct PrincipalBundle {
  Action action;
  Obj base;
  Mor proj;
  std::shared_ptr<const FibreProduct> kernel;  // X x_{p,Z,p} X
  Mor shear;                                   // (x, g) -> (x, x g), or (g, x) -> (g x, x)
  Mor shear_inverse;
};

// action axioms, p invariant, p a cover, shear invertible with continuous inverse
ValidationReport validate_principal(const Action& a, const Mor& p);
// throws NotACover, NotFibrewiseConstant or ShearNotIso
PrincipalBundle make_principal_bundle(const Action& a, const Mor& p);

struct BasicResult {
  bool flag = false;
  bool free = false;
  Coequalizer orbit;
  std::optional<PrincipalBundle> bundle;
  ValidationReport report;  // includes the backend cross-checks
};
BasicResult is_basic(const Action& a);

struct PulledBundle {
  PrincipalBundle bundle;
  std::shared_ptr<const FibreProduct> fp;  // Z' x_{f,Z,p} X
  GMap map;                                // pr2
};
PulledBundle pullback_bundle(const PrincipalBundle& b, const Mor& f);

// raw data (s, m, p) pulled back along f: Z' -> Z; action is empty if m does not descend
struct PulledData {
  bool well_defined = false;
  std::shared_ptr<const FibreProduct> fp;
  std::optional<Action> action;
  Mor proj;
};
PulledData pullback_data(const Action& a, const Mor& p, const Mor& f);

// an action pulled back along f: Z' -> Z over a G-invariant phi: X -> Z
struct PulledAction {
  std::shared_ptr<const FibreProduct> fp;  // Z' x_{f,Z,phi} X
  Action action;
  GMap map;  // pr2
};
PulledAction pullback_action(const Action& a, const Mor& phi, const Mor& f);

// the unique base map with p2 f = (f/G) p1
Mor induced_base_map(const PrincipalBundle& b1, const PrincipalBundle& b2, const Mor& f);

// a right action Y of the Cech groupoid of p: X -> Z is the pull-back of X along Y/G -> Z
struct CechReconstruction {
  PrincipalBundle own;    // Y -> Y/G
  PrincipalBundle cover;  // X -> Z with the canonical action
  Mor base;               // Y/G -> Z
  PulledBundle pulled;    // (Y/G) x_Z X
  Mor iso;                // Y -> (Y/G) x_Z X, y -> (p'(y), s(y))
};
CechReconstruction reconstruct_cech_action(const Mor& p, const Action& y);

}  // namespace groupoidal

#endif
