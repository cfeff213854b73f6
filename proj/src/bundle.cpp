#include "groupoidal/bundle.hpp"

#include "detail.hpp"

namespace groupoidal {

using detail::in;
using detail::ix;
using detail::require;
using detail::tuple_str;

namespace {

// the projection of the action domain onto the carrier
Mor carrier_leg(const Action& a) { return a.side == Side::Right ? a.dom->pr1 : a.dom->pr2; }

struct Shear {
  FibreProduct kernel;
  std::vector<int> table;
  bool defined = true;
  std::string witness;
};

Shear shear_into(const Action& a, const Mor& p) {
  Shear out{fibre_product(p, p), std::vector<int>(a.dom->size(), -1), true, {}};
  for (std::size_t k = 0; k < a.dom->size(); ++k) {
    int x = a.elem(in(k)), y = a.mult(in(k));
    out.table[k] = a.side == Side::Right ? out.kernel.find(x, y) : out.kernel.find(y, x);
    if (out.table[k] < 0 && out.defined) {
      out.defined = false;
      out.witness = a.side == Side::Right ? tuple_str({a.X.id(x), a.g.G1.id(a.arrow(in(k)))})
                                          : tuple_str({a.g.G1.id(a.arrow(in(k))), a.X.id(x)});
    }
  }
  return out;
}

std::optional<Mor> shear_inverse_of(const Action& a, const Shear& sh) {
  if (!sh.defined) return std::nullopt;
  return inverse(Mor::trusted(a.dom->apex, sh.kernel.apex, sh.table));
}

std::string non_injective(const Action& a, const Shear& sh) {
  std::vector<int> seen(sh.kernel.size(), -1);
  for (std::size_t k = 0; k < sh.table.size(); ++k) {
    int t = sh.table[k];
    if (t < 0) continue;
    if (seen[ix(t)] >= 0) return a.dom->apex.id(seen[ix(t)]) + " and " + a.dom->apex.id(in(k));
    seen[ix(t)] = in(k);
  }
  for (std::size_t t = 0; t < seen.size(); ++t)
    if (seen[t] < 0) return sh.kernel.apex.id(in(t)) + " is not hit";
  return "inverse is not continuous";
}

std::string invariance_witness(const Action& a, const Mor& p) {
  for (std::size_t k = 0; k < a.dom->size(); ++k) {
    int x = a.elem(in(k)), y = a.mult(in(k));
    if (p(x) != p(y)) return a.X.id(x) + " and " + a.X.id(y);
  }
  return {};
}

}  // namespace

Coequalizer orbit_space(const Action& a) { return coequalizer(carrier_leg(a), a.mult); }

ValidationReport validate_principal(const Action& a, const Mor& p0) {
  require(p0.dom() == a.X, "a bundle projection starts at the carrier");
  Mor p = rebase(p0, a.X, p0.cod());
  ValidationReport rep;
  rep.merge(validate_action(a).report, "action");
  std::string wi = invariance_witness(a, p);
  rep.add("invariant", "p(x g) = p(x)", wi.empty(), wi);
  rep.add("cover", "p is a cover", is_cover(p), is_cover(p) ? "" : p.show());
  Shear sh = shear_into(a, p);
  bool iso = shear_inverse_of(a, sh).has_value();
  rep.add("shear", "(x, g) -> (x, x g) is an isomorphism onto X x_Z X", iso,
          iso ? "" : (sh.defined ? non_injective(a, sh) : sh.witness));
  return rep;
}

PrincipalBundle make_principal_bundle(const Action& a, const Mor& p0) {
  require(p0.dom() == a.X, "a bundle projection starts at the carrier");
  Mor p = rebase(p0, a.X, p0.cod());
  if (!is_cover(p)) throw Error(ErrorKind::NotACover, "bundle projection is not a cover", p.show());
  std::string wi = invariance_witness(a, p);
  if (!wi.empty()) throw Error(ErrorKind::NotFibrewiseConstant, "bundle projection is not invariant", wi);
  Shear sh = shear_into(a, p);
  auto inv = shear_inverse_of(a, sh);
  if (!inv) throw Error(ErrorKind::ShearNotIso, "shear map is not invertible", sh.defined ? non_injective(a, sh) : sh.witness);
  auto kernel = std::make_shared<const FibreProduct>(std::move(sh.kernel));
  Mor shear(a.dom->apex, kernel->apex, sh.table);
  return PrincipalBundle{a, p.cod(), p, kernel, shear, *inv};
}

BasicResult is_basic(const Action& a) {
  BasicResult out;
  out.orbit = orbit_space(a);
  const Mor& p = out.orbit.proj;
  bool cover = is_cover(p);
  Shear sh = shear_into(a, p);
  auto inv = shear_inverse_of(a, sh);
  out.flag = cover && inv.has_value();
  out.free = is_free(a);
  if (out.flag) out.bundle = make_principal_bundle(a, p);

  out.report.add("orbit-cover", "the orbit projection is a cover", cover, cover ? "" : p.show());
  out.report.add("shear-iso", "the shear map onto X x_{X/G} X is an isomorphism", inv.has_value(),
                 inv ? "" : non_injective(a, sh));
  if (a.X.backend() == Backend::FinSet) {
    out.report.add("free-criterion", "basic iff free", out.flag == out.free,
                   out.flag == out.free ? "" : std::string("basic=") + (out.flag ? "1" : "0"));
  } else {
    // the arrow carrying x1 to x2, defined on the kernel once the action is free
    bool arrow_continuous = false;
    if (out.free) {
      std::vector<int> t(sh.kernel.size(), -1);
      for (std::size_t k = 0; k < sh.table.size(); ++k) t[ix(sh.table[k])] = a.arrow(in(k));
      arrow_continuous = is_continuous(sh.kernel.apex, a.g.G1, t);
    }
    bool three = out.free && arrow_continuous && cover;
    out.report.add("three-conditions", "basic iff free, arrow map continuous, orbit projection a cover",
                   out.flag == three, out.flag == three ? "" : std::string("basic=") + (out.flag ? "1" : "0"));
    out.report.add("orbit-open", "the orbit projection is open", is_open_map(p), is_open_map(p) ? "" : p.show());
  }
  return out;
}

PulledData pullback_data(const Action& a, const Mor& p0, const Mor& f) {
  require(p0.dom() == a.X && f.cod() == p0.cod(), "pull-back needs maps into a common base");
  Mor p = rebase(p0, a.X, f.cod());
  PulledData out;
  out.fp = std::make_shared<const FibreProduct>(fibre_product(f, p));
  out.proj = out.fp->pr1;
  out.well_defined = invariance_witness(a, p).empty();
  if (!out.well_defined) return out;
  const FibreProduct& fp = *out.fp;
  Mor anchor = compose(a.anchor, fp.pr2);
  out.action = make_action(a.g, anchor, a.side, [&](int k, int g) {
    auto [z, x] = fp.pairs[ix(k)];
    int y = a.act(x, g);
    return y < 0 ? -1 : fp.find(z, y);
  });
  return out;
}

PulledBundle pullback_bundle(const PrincipalBundle& b, const Mor& f) {
  PulledData d = pullback_data(b.action, b.proj, f);
  PrincipalBundle nb = make_principal_bundle(*d.action, d.proj);
  return PulledBundle{nb, d.fp, GMap{nb.action, b.action, d.fp->pr2}};
}

PulledAction pullback_action(const Action& a, const Mor& phi, const Mor& f) {
  PulledData d = pullback_data(a, phi, f);
  if (!d.well_defined) throw Error(ErrorKind::NotFibrewiseConstant, "the map is not invariant", invariance_witness(a, phi));
  return PulledAction{d.fp, *d.action, GMap{*d.action, a, d.fp->pr2}};
}

Mor induced_base_map(const PrincipalBundle& b1, const PrincipalBundle& b2, const Mor& f) {
  require(is_gmap(b1.action, b2.action, f), "a base map is induced by G-maps only");
  Mor pf = compose(b2.proj, rebase(f, b1.action.X, b2.action.X));
  auto h = factor_through(b1.proj, pf);
  if (!h) throw Error(ErrorKind::NotFibrewiseConstant, "G-map does not descend", f.show());
  return *h;
}

CechReconstruction reconstruct_cech_action(const Mor& p, const Action& y) {
  Groupoid C = cech_groupoid(p);
  require(y.g == C && y.side == Side::Right, "expected a right action of the Cech groupoid");
  BasicResult b = is_basic(y);
  if (!b.flag) throw Error(ErrorKind::NotBasic, "Cech groupoid action is not basic", y.X.show());
  PrincipalBundle cover = make_principal_bundle(canonical_action(C), p);
  Mor base = induced_base_map(*b.bundle, cover, y.anchor);
  PulledBundle pulled = pullback_bundle(cover, base);
  Mor iso = pairing(*pulled.fp, b.bundle->proj, y.anchor);
  if (!is_iso(iso) || !is_gmap(y, pulled.bundle.action, iso))
    throw Error(ErrorKind::NotBasic, "comparison map is not an isomorphism of actions", iso.show());
  return CechReconstruction{*b.bundle, cover, base, pulled, iso};
}

}  // namespace groupoidal
