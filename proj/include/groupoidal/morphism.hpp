#ifndef GROUPOIDAL_MORPHISM_HPP
#define GROUPOIDAL_MORPHISM_HPP

#include <functional>
#include <optional>

#include "groupoidal/groupoid.hpp"

namespace groupoidal {

// ---- functors

bool operator==(const Functor& a, const Functor& b);
inline bool operator!=(const Functor& a, const Functor& b) { return !(a == b); }

ValidationReport validate_functor(const Functor& F);
Functor identity_functor(const Groupoid& g);
// F2 after F1
Functor compose_functors(const Functor& F2, const Functor& F1);
// every functor G -> H, by backtracking over arrow images; stops after limit
std::vector<Functor> all_functors(const Groupoid& G, const Groupoid& H, std::size_t limit = SIZE_MAX);

// q^*(F): G(G0 x_{F0,q} Y) -> H(Y)
struct PulledFunctor {
  PullbackGroupoid src, dst;
  std::shared_ptr<const FibreProduct> tilde;  // G0 x_{F0,H0,q} Y
  Functor F;
};
PulledFunctor pullback_functor(const Functor& F, const Mor& q);

// ---- natural transformations

struct NatTrans {
  Functor from, to;
  Mor phi;  // G0 -> H1
};

enum class NatMode { Vertical, Horizontal };

ValidationReport validate_nat(const NatTrans& n);
NatTrans identity_nat(const Functor& F);
NatTrans inverse_nat(const NatTrans& n);
// vertical: a after b, so b.to = a.from; horizontal: a acts on the outer functors
NatTrans compose_nat(NatMode mode, const NatTrans& a, const NatTrans& b);
std::vector<NatTrans> all_nat_transformations(const Functor& F1, const Functor& F2, std::size_t limit = SIZE_MAX);

// Psi: F1 p_* => F2 p_* as a map X -> H1; the unique Phi with Psi = Phi p
NatTrans descend_nat(const Functor& F1, const Functor& F2, const Mor& p, const Mor& psi);

// ---- sections and inner automorphisms

struct Bisection {
  bool is_section = false;
  bool is_bisection = false;
  std::optional<Functor> ad;
};
Bisection ad_bisection(const Groupoid& g, const Mor& phi);
Functor Ad(const Groupoid& g, const Mor& phi);
// (phi1 o phi2)(x) = phi1(r phi2(x)) phi2(x)
Mor section_product(const Groupoid& g, const Mor& phi1, const Mor& phi2);
std::optional<Mor> section_inverse(const Groupoid& g, const Mor& phi);

struct Surjectivity {
  bool essentially_surjective = false;
  bool fully_faithful = false;
  std::string es_witness, ff_witness;
};
Surjectivity functor_surjectivity_tests(const Functor& F);
// local variants, searching covers U -> H0 with |U| <= |H0| + extra
bool almost_essentially_surjective(const Functor& F, std::size_t extra = 1);
bool almost_fully_faithful(const Functor& F, std::size_t extra = 1);

// ---- anafunctors

struct Anafunctor {
  Groupoid src, dst;
  PullbackGroupoid pb;  // src(X) and p_*
  Functor F;            // src(X) -> dst
  // composites only: X = X_first x X_second
  std::shared_ptr<const FibreProduct> parts;
  std::shared_ptr<const Anafunctor> first, second;

  const Obj& X() const { return pb.g.G0; }
  const Mor& p() const { return pb.hyper.F0; }
  // F^1(x1, g, x2)
  int F1(int x1, int g, int x2) const { return F.F1(pb.triple(x1, g, x2)); }
};

Anafunctor anafunctor_over(const Groupoid& H, const PullbackGroupoid& pb, const Mor& F0, const Mor& F1);
Anafunctor make_anafunctor(const Groupoid& G, const Groupoid& H, const Mor& p, const Mor& F0,
                           const std::function<int(int, int, int)>& F1);
ValidationReport validate_anafunctor(const Anafunctor& a);
Anafunctor identity_anafunctor(const Groupoid& g);
Anafunctor functor_to_anafunctor(const Functor& F);
// b after a; carrier X_a x_{F_a^0, p_b} X_b
Anafunctor compose_anafunctors(const Anafunctor& b, const Anafunctor& a);
bool same_anafunctor(const Anafunctor& a, const Anafunctor& b);
// phi: X_a -> X_b with p_b phi = p_a and F_b phi_* = F_a
bool is_anafunctor_iso(const Anafunctor& a, const Anafunctor& b, const Mor& phi);
// c(b a) -> (c b) a, ((x1, x2), x3) -> (x1, (x2, x3))
Mor associator(const Anafunctor& c_ba, const Anafunctor& cb_a);
// (x, F^0 x) -> x and (p x, x) -> x
Mor left_unitor(const Anafunctor& id_after_a);
Mor right_unitor(const Anafunctor& a_after_id);

struct AnaNat {
  Anafunctor from, to;
  std::shared_ptr<const FibreProduct> joint;  // X1 x_{G0} X2
  Mor phi;                                    // joint -> H1
};

AnaNat make_ananat(const Anafunctor& from, const Anafunctor& to, const std::function<int(int, int)>& phi);
ValidationReport validate_ananat(const AnaNat& n);
AnaNat identity_ananat(const Anafunctor& a);
AnaNat inverse_ananat(const AnaNat& n);
AnaNat ananat_from_iso(const Anafunctor& a, const Anafunctor& b, const Mor& phi);
// vertical: a after b (b.to is a.from); horizontal: a between the outer anafunctors
AnaNat compose_ananat(NatMode mode, const AnaNat& a, const AnaNat& b);
bool same_ananat(const AnaNat& a, const AnaNat& b);
std::optional<AnaNat> find_ananat(const Anafunctor& from, const Anafunctor& to);

// ---- equivalences

struct AnaIso {
  Anafunctor lifted;                        // (XHY, p pr1, G)
  PullbackGroupoid target;                  // (G^0)^* H
  Functor iso;                              // src(XHY) -> (G^0)^* H, identity on objects
  AnaNat to_original;                       // (XHY, p pr1, G) => (X, p, F)
};

struct EquivalenceResult {
  bool flag = false;
  Surjectivity tests;
  std::optional<AnaIso> witness;
};
EquivalenceResult is_ana_equivalence(const Anafunctor& a);

struct QuasiInverse {
  Anafunctor inverse;
  AnaNat unit;    // inverse after a => id
  AnaNat counit;  // a after inverse => id
};
// exhaustive over carriers Y of size <= cap, up to relabelling of Y
std::optional<QuasiInverse> find_quasi_inverse(const Anafunctor& a, std::size_t cap = 4);

}  // namespace groupoidal

#endif
