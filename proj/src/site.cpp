#include "groupoidal/site.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/pending/disjoint_sets.hpp>

namespace groupoidal {

const char* backend_name(Backend b) { return b == Backend::FinSet ? "finset" : "fintop"; }

struct Obj::Data {
  Backend backend = Backend::FinSet;
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> index;
  std::vector<Subset> nbhd;  // FinTop only
};

namespace {

std::shared_ptr<Obj::Data> make_data(Backend b, std::vector<std::string> ids) {
  auto d = std::make_shared<Obj::Data>();
  d->backend = b;
  d->index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!d->index.emplace(ids[i], static_cast<int>(i)).second)
      throw Error(ErrorKind::DuplicateElement, "element id '" + ids[i] + "' repeated", ids[i]);
  }
  d->ids = std::move(ids);
  return d;
}

bool subset_of(const Subset& a, const Subset& b) { return a.is_subset_of(b); }

// index translation between equal objects whose ids may be ordered differently
std::vector<int> translation(const Obj& from, const Obj& to) {
  std::vector<int> t(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    t[i] = to.find(from.id(static_cast<int>(i)));
    if (t[i] < 0) throw Error(ErrorKind::BoundaryMismatch, "carriers differ at '" + from.id(static_cast<int>(i)) + "'");
  }
  return t;
}

void require_same(const Obj& a, const Obj& b, const char* what) {
  if (a.backend() != b.backend())
    throw Error(ErrorKind::BackendMismatch, std::string(what) + ": " + backend_name(a.backend()) + " vs " +
                                                backend_name(b.backend()));
  if (!(a == b)) throw Error(ErrorKind::BoundaryMismatch, std::string(what) + ": " + a.show() + " vs " + b.show());
}

}  // namespace

Obj::Obj() : d_(make_data(Backend::FinSet, {})) {}

Obj Obj::finset(std::vector<std::string> ids) { return Obj(make_data(Backend::FinSet, std::move(ids))); }

Obj Obj::discrete(Backend b, std::vector<std::string> ids) {
  if (b == Backend::FinSet) return finset(std::move(ids));
  std::vector<Subset> nb(ids.size(), Subset(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) nb[i].set(i);
  return space(std::move(ids), std::move(nb));
}

Obj Obj::space(std::vector<std::string> ids, std::vector<Subset> nbhd) {
  auto d = make_data(Backend::FinTop, std::move(ids));
  const std::size_t n = d->ids.size();
  if (nbhd.size() != n) throw Error(ErrorKind::NotATopology, "neighbourhood list has wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    if (nbhd[i].size() != n || !nbhd[i].test(i))
      throw Error(ErrorKind::NotATopology, "neighbourhood of '" + d->ids[i] + "' does not contain it");
    for (std::size_t j = nbhd[i].find_first(); j != Subset::npos; j = nbhd[i].find_next(j))
      if (!subset_of(nbhd[j], nbhd[i]))
        throw Error(ErrorKind::NotATopology, "neighbourhoods of '" + d->ids[i] + "' and '" + d->ids[j] + "' not nested");
  }
  d->nbhd = std::move(nbhd);
  return Obj(d);
}

Obj Obj::space_from_opens(std::vector<std::string> ids, const std::vector<Subset>& opens) {
  auto d = make_data(Backend::FinTop, std::move(ids));
  const std::size_t n = d->ids.size();
  Obj probe(d);
  std::set<Subset> family;
  for (const auto& o : opens) {
    if (o.size() != n) throw Error(ErrorKind::NotATopology, "open set over the wrong carrier");
    family.insert(o);
  }
  Subset empty(n), full(n);
  full.set();
  if (!family.count(empty)) throw Error(ErrorKind::NotATopology, "empty set missing", "{}");
  if (!family.count(full)) throw Error(ErrorKind::NotATopology, "full carrier missing", probe.show(full));
  for (auto a = family.begin(); a != family.end(); ++a)
    for (auto b = a; b != family.end(); ++b) {
      if (!family.count(*a | *b) || !family.count(*a & *b))
        throw Error(ErrorKind::NotATopology, "family not closed under union/intersection",
                    probe.show(*a) + " , " + probe.show(*b));
    }
  std::vector<Subset> nb(n, full);
  for (const auto& o : family)
    for (std::size_t i = o.find_first(); i != Subset::npos; i = o.find_next(i)) nb[i] &= o;
  d->nbhd = std::move(nb);
  return Obj(d);
}

Backend Obj::backend() const { return d_->backend; }
std::size_t Obj::size() const { return d_->ids.size(); }
const std::string& Obj::id(int i) const { return d_->ids.at(static_cast<std::size_t>(i)); }
const std::vector<std::string>& Obj::ids() const { return d_->ids; }

int Obj::find(const std::string& id) const {
  auto it = d_->index.find(id);
  return it == d_->index.end() ? -1 : it->second;
}

int Obj::at(const std::string& id) const {
  int i = find(id);
  if (i < 0) throw Error(ErrorKind::UnknownElement, "no element '" + id + "' in " + show(), id);
  return i;
}

Subset Obj::nbhd(int i) const {
  if (d_->backend == Backend::FinTop) return d_->nbhd[static_cast<std::size_t>(i)];
  Subset s(size());
  s.set(static_cast<std::size_t>(i));
  return s;
}

bool Obj::is_open(const Subset& s) const {
  if (d_->backend == Backend::FinSet) return true;
  for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i))
    if (!subset_of(d_->nbhd[i], s)) return false;
  return true;
}

Subset Obj::open_hull(const Subset& s) const {
  if (d_->backend == Backend::FinSet) return s;
  Subset out(size());
  for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i)) out |= d_->nbhd[i];
  return out;
}

std::vector<Subset> Obj::opens() const {
  std::set<Subset> fam{none()};
  for (std::size_t i = 0; i < size(); ++i) {
    std::vector<Subset> add;
    Subset u = nbhd(static_cast<int>(i));
    for (const auto& s : fam) add.push_back(s | u);
    fam.insert(add.begin(), add.end());
  }
  return {fam.begin(), fam.end()};
}

bool Obj::leq(int x, int y) const {
  if (d_->backend == Backend::FinSet) return x == y;
  return d_->nbhd[static_cast<std::size_t>(x)].test(static_cast<std::size_t>(y));
}

Subset Obj::subset(const std::vector<int>& elems) const {
  Subset s(size());
  for (int e : elems) s.set(static_cast<std::size_t>(e));
  return s;
}

std::string Obj::show(const Subset& s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i)) {
    if (!first) out += ", ";
    out += d_->ids[i];
    first = false;
  }
  return out + "}";
}

std::string Obj::show() const { return show(all()); }

bool operator==(const Obj& a, const Obj& b) {
  if (a.d_ == b.d_) return true;
  if (a.backend() != b.backend() || a.size() != b.size()) return false;
  std::vector<int> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    t[i] = b.find(a.id(static_cast<int>(i)));
    if (t[i] < 0) return false;
  }
  if (a.backend() == Backend::FinSet) return true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Subset mapped(b.size());
    Subset na = a.nbhd(static_cast<int>(i));
    for (std::size_t j = na.find_first(); j != Subset::npos; j = na.find_next(j))
      mapped.set(static_cast<std::size_t>(t[j]));
    if (mapped != b.nbhd(t[i])) return false;
  }
  return true;
}

// ---- maps

Mor::Mor() = default;

Mor::Mor(Obj dom, Obj cod, std::vector<int> table) : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (dom_.backend() != cod_.backend())
    throw Error(ErrorKind::BackendMismatch, "map between different backends");
  if (table_.size() != dom_.size()) throw Error(ErrorKind::InvalidMor, "table is not total on " + dom_.show());
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] < 0 || static_cast<std::size_t>(table_[i]) >= cod_.size())
      throw Error(ErrorKind::InvalidMor, "image of '" + dom_.id(static_cast<int>(i)) + "' outside " + cod_.show(),
                  dom_.id(static_cast<int>(i)));
  if (!is_continuous(dom_, cod_, table_)) throw Error(ErrorKind::InvalidMor, "map is not continuous", show());
}

Mor Mor::trusted(Obj dom, Obj cod, std::vector<int> table) {
  Mor m;
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  m.table_ = std::move(table);
  return m;
}

Mor Mor::from_ids(Obj dom, Obj cod, const std::vector<std::pair<std::string, std::string>>& assoc) {
  std::vector<int> t(dom.size(), -1);
  for (const auto& [a, b] : assoc) {
    int i = dom.at(a);
    t[static_cast<std::size_t>(i)] = cod.at(b);
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0) throw Error(ErrorKind::InvalidMor, "no image for '" + dom.id(static_cast<int>(i)) + "'", dom.id(static_cast<int>(i)));
  return Mor(std::move(dom), std::move(cod), std::move(t));
}

Mor Mor::identity(const Obj& x) {
  std::vector<int> t(x.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
  return trusted(x, x, std::move(t));
}

Mor Mor::constant(const Obj& dom, const Obj& cod, int value) {
  return Mor(dom, cod, std::vector<int>(dom.size(), value));
}

const std::string& Mor::image(const std::string& id) const { return cod_.id(table_[static_cast<std::size_t>(dom_.at(id))]); }

std::string Mor::show() const {
  std::string out = "{";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ", ";
    out += dom_.id(static_cast<int>(i)) + "->" + cod_.id(table_[i]);
  }
  return out + "}";
}

bool operator==(const Mor& a, const Mor& b) {
  if (!(a.dom_ == b.dom_) || !(a.cod_ == b.cod_)) return false;
  if (a.dom_.identical(b.dom_) && a.cod_.identical(b.cod_)) return a.table_ == b.table_;
  for (std::size_t i = 0; i < a.table_.size(); ++i) {
    const std::string& x = a.dom_.id(static_cast<int>(i));
    if (a.cod_.id(a.table_[i]) != b.cod_.id(b.table_[static_cast<std::size_t>(b.dom_.find(x))])) return false;
  }
  return true;
}

Mor tabulate(const Obj& dom, const Obj& cod, const std::function<int(int)>& f) {
  std::vector<int> t(dom.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(static_cast<int>(i));
  return Mor(dom, cod, std::move(t));
}

bool is_continuous(const Obj& dom, const Obj& cod, const std::vector<int>& table) {
  if (dom.backend() == Backend::FinSet) return true;
  for (std::size_t x = 0; x < dom.size(); ++x) {
    Subset u = dom.nbhd(static_cast<int>(x));
    Subset target = cod.nbhd(table[x]);
    for (std::size_t y = u.find_first(); y != Subset::npos; y = u.find_next(y))
      if (!target.test(static_cast<std::size_t>(table[y]))) return false;
  }
  return true;
}

bool is_continuous_by_opens(const Obj& dom, const Obj& cod, const std::vector<int>& table) {
  auto dom_opens = dom.opens();
  std::set<Subset> fam(dom_opens.begin(), dom_opens.end());
  for (const auto& v : cod.opens()) {
    Subset pre(dom.size());
    for (std::size_t x = 0; x < dom.size(); ++x)
      if (v.test(static_cast<std::size_t>(table[x]))) pre.set(x);
    if (!fam.count(pre)) return false;
  }
  return true;
}

bool is_monotone(const Obj& dom, const Obj& cod, const std::vector<int>& table) {
  for (std::size_t x = 0; x < dom.size(); ++x)
    for (std::size_t y = 0; y < dom.size(); ++y)
      if (dom.leq(static_cast<int>(x), static_cast<int>(y)) && !cod.leq(table[x], table[y])) return false;
  return true;
}

Mor compose(const Mor& f, const Mor& g) {
  require_same(g.cod(), f.dom(), "compose");
  std::vector<int> t(g.dom().size());
  if (g.cod().identical(f.dom()) || g.cod().ids() == f.dom().ids()) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(g(static_cast<int>(i)));
  } else {
    auto tr = translation(g.cod(), f.dom());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(tr[static_cast<std::size_t>(g(static_cast<int>(i)))]);
  }
  return Mor::trusted(g.dom(), f.cod(), std::move(t));
}

Mor rebase(const Mor& f, const Obj& dom, const Obj& cod) {
  if (f.dom().identical(dom) && f.cod().identical(cod)) return f;
  require_same(f.dom(), dom, "rebase (domain)");
  require_same(f.cod(), cod, "rebase (codomain)");
  auto in = translation(dom, f.dom());
  auto out = translation(f.cod(), cod);
  std::vector<int> t(dom.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = out[static_cast<std::size_t>(f(in[i]))];
  return Mor::trusted(dom, cod, std::move(t));
}

Subset image(const Mor& f, const Subset& s) {
  Subset out(f.cod().size());
  for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i)) out.set(static_cast<std::size_t>(f(static_cast<int>(i))));
  return out;
}

Subset preimage(const Mor& f, const Subset& s) {
  Subset out(f.dom().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (s.test(static_cast<std::size_t>(f(static_cast<int>(i))))) out.set(i);
  return out;
}

bool is_surjective(const Mor& f) { return image(f, f.dom().all()).all(); }

bool is_injective(const Mor& f) {
  std::vector<char> seen(f.cod().size(), 0);
  for (int v : f.table()) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

bool is_open_map(const Mor& f) {
  if (f.dom().backend() == Backend::FinSet) return true;
  for (std::size_t x = 0; x < f.dom().size(); ++x)
    if (!f.cod().is_open(image(f, f.dom().nbhd(static_cast<int>(x))))) return false;
  return true;
}

bool is_cover(const Mor& f) { return is_surjective(f) && is_open_map(f); }

std::optional<Mor> inverse(const Mor& f) {
  if (f.dom().size() != f.cod().size() || !is_injective(f)) return std::nullopt;
  std::vector<int> t(f.cod().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) t[static_cast<std::size_t>(f(static_cast<int>(i)))] = static_cast<int>(i);
  if (!is_continuous(f.cod(), f.dom(), t)) return std::nullopt;
  return Mor::trusted(f.cod(), f.dom(), std::move(t));
}

bool is_iso(const Mor& f) { return inverse(f).has_value(); }

// ---- fibre products

std::string pair_id(const std::string& l, const std::string& r) {
  auto wrap = [](const std::string& s) { return s.find('|') == std::string::npos ? s : "(" + s + ")"; };
  return wrap(l) + "|" + wrap(r);
}

int FibreProduct::find(int l, int r) const {
  if (l < 0 || r < 0) return -1;
  const std::size_t w = g.dom().size();
  return lookup[static_cast<std::size_t>(l) * w + static_cast<std::size_t>(r)];
}

int FibreProduct::at(int l, int r) const {
  int k = find(l, r);
  if (k < 0)
    throw Error(ErrorKind::BoundaryMismatch, "pair (" + f.dom().id(l) + ", " + g.dom().id(r) + ") not in fibre product");
  return k;
}

FibreProduct fibre_product(const Mor& f, const Mor& g) {
  require_same(f.cod(), g.cod(), "fibre_product");
  FibreProduct fp;
  fp.f = f;
  fp.g = g;
  std::vector<int> gt = g.table();
  if (!f.cod().identical(g.cod()) && f.cod().ids() != g.cod().ids()) {
    auto tr = translation(g.cod(), f.cod());
    for (auto& v : gt) v = tr[static_cast<std::size_t>(v)];
  }
  const std::size_t ny = f.dom().size(), nu = g.dom().size();
  // bucket the right leg by base point
  std::vector<std::vector<int>> over(f.cod().size());
  for (std::size_t u = 0; u < nu; ++u) over[static_cast<std::size_t>(gt[u])].push_back(static_cast<int>(u));
  fp.lookup.assign(ny * nu, -1);
  std::vector<std::string> ids;
  std::vector<int> t1, t2;
  for (std::size_t y = 0; y < ny; ++y)
    for (int u : over[static_cast<std::size_t>(f(static_cast<int>(y)))]) {
      fp.lookup[y * nu + static_cast<std::size_t>(u)] = static_cast<int>(fp.pairs.size());
      fp.pairs.emplace_back(static_cast<int>(y), u);
      ids.push_back(pair_id(f.dom().id(static_cast<int>(y)), g.dom().id(u)));
      t1.push_back(static_cast<int>(y));
      t2.push_back(u);
    }
  if (f.cod().backend() == Backend::FinSet) {
    fp.apex = Obj::finset(std::move(ids));
  } else {
    const std::size_t n = fp.pairs.size();
    std::vector<Subset> nb(n, Subset(n));
    for (std::size_t k = 0; k < n; ++k) {
      Subset uy = f.dom().nbhd(fp.pairs[k].first), uu = g.dom().nbhd(fp.pairs[k].second);
      for (std::size_t a = uy.find_first(); a != Subset::npos; a = uy.find_next(a))
        for (std::size_t b = uu.find_first(); b != Subset::npos; b = uu.find_next(b)) {
          int j = fp.lookup[a * nu + b];
          if (j >= 0) nb[k].set(static_cast<std::size_t>(j));
        }
    }
    fp.apex = Obj::space(std::move(ids), std::move(nb));
  }
  fp.pr1 = Mor::trusted(fp.apex, f.dom(), std::move(t1));
  fp.pr2 = Mor::trusted(fp.apex, g.dom(), std::move(t2));
  return fp;
}

Mor pairing(const FibreProduct& fp, const Mor& a, const Mor& b) {
  require_same(a.dom(), b.dom(), "pairing");
  require_same(a.cod(), fp.f.dom(), "pairing (left)");
  require_same(b.cod(), fp.g.dom(), "pairing (right)");
  std::vector<int> ta = a.table(), tb = b.table();
  if (!a.cod().identical(fp.f.dom())) {
    auto tr = translation(a.cod(), fp.f.dom());
    for (auto& v : ta) v = tr[static_cast<std::size_t>(v)];
  }
  if (!b.cod().identical(fp.g.dom())) {
    auto tr = translation(b.cod(), fp.g.dom());
    for (auto& v : tb) v = tr[static_cast<std::size_t>(v)];
  }
  std::vector<int> t(a.dom().size());
  for (std::size_t w = 0; w < t.size(); ++w) {
    t[w] = fp.find(ta[w], tb[w]);
    if (t[w] < 0)
      throw Error(ErrorKind::BoundaryMismatch, "pairing leaves the fibre product at '" + a.dom().id(static_cast<int>(w)) + "'",
                  a.dom().id(static_cast<int>(w)));
  }
  return Mor(a.dom(), fp.apex, std::move(t));
}

Mor fibre_map(const FibreProduct& from, const FibreProduct& to, const Mor& a, const Mor& b) {
  return pairing(to, compose(a, from.pr1), compose(b, from.pr2));
}

// ---- quotients

Coequalizer quotient_by(const Obj& x, const std::vector<std::pair<int, int>>& relations) {
  const std::size_t n = x.size();
  std::vector<int> rank(n), parent(n);
  boost::disjoint_sets<int*, int*> ds(rank.data(), parent.data());
  for (std::size_t i = 0; i < n; ++i) ds.make_set(static_cast<int>(i));
  for (const auto& [a, b] : relations) ds.union_set(a, b);

  Coequalizer q;
  std::unordered_map<int, int> cls;  // root -> class index
  std::vector<int> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    int root = ds.find_set(static_cast<int>(i));
    auto [it, fresh] = cls.emplace(root, static_cast<int>(q.classes.size()));
    if (fresh) q.classes.emplace_back();
    q.classes[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    proj[i] = it->second;
  }
  std::vector<std::string> names;
  for (const auto& c : q.classes) {
    const std::string* best = &x.id(c.front());
    for (int e : c)
      if (x.id(e) < *best) best = &x.id(e);
    names.push_back(*best);
  }
  const std::size_t k = q.classes.size();
  if (x.backend() == Backend::FinSet) {
    q.quotient = Obj::finset(std::move(names));
  } else {
    // least open containing a class: saturate, take the open hull, repeat
    std::vector<Subset> nb(k, Subset(k));
    for (std::size_t c = 0; c < k; ++c) {
      Subset v(k);
      v.set(c);
      for (;;) {
        Subset pre(n);
        for (std::size_t i = 0; i < n; ++i)
          if (v.test(static_cast<std::size_t>(proj[i]))) pre.set(i);
        Subset hull = x.open_hull(pre);
        Subset next = v;
        for (std::size_t i = hull.find_first(); i != Subset::npos; i = hull.find_next(i))
          next.set(static_cast<std::size_t>(proj[i]));
        if (next == v) break;
        v = next;
      }
      nb[c] = v;
    }
    q.quotient = Obj::space(std::move(names), std::move(nb));
  }
  q.proj = Mor::trusted(x, q.quotient, std::move(proj));
  q.proj_is_cover = is_cover(q.proj);
  return q;
}

Coequalizer coequalizer(const Mor& f, const Mor& g) {
  require_same(f.dom(), g.dom(), "coequalizer (domains)");
  require_same(f.cod(), g.cod(), "coequalizer (codomains)");
  std::vector<int> gt = g.table();
  if (!f.cod().identical(g.cod())) {
    auto tr = translation(g.cod(), f.cod());
    for (auto& v : gt) v = tr[static_cast<std::size_t>(v)];
  }
  std::vector<int> tr_dom(f.dom().size());
  if (f.dom().identical(g.dom())) {
    for (std::size_t i = 0; i < tr_dom.size(); ++i) tr_dom[i] = static_cast<int>(i);
  } else {
    tr_dom = translation(f.dom(), g.dom());
  }
  std::vector<std::pair<int, int>> rel;
  for (std::size_t w = 0; w < f.dom().size(); ++w)
    rel.emplace_back(f(static_cast<int>(w)), gt[static_cast<std::size_t>(tr_dom[w])]);
  return quotient_by(f.cod(), rel);
}

std::optional<Mor> descend(const Coequalizer& q, const Mor& f) {
  return factor_through(q.proj, f);
}

std::optional<Mor> factor_through(const Mor& p, const Mor& f) {
  if (!(p.dom() == f.dom())) throw Error(ErrorKind::BoundaryMismatch, "factor_through: domains differ");
  std::vector<int> tr(p.dom().size());
  if (p.dom().identical(f.dom())) {
    for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = static_cast<int>(i);
  } else {
    tr = translation(p.dom(), f.dom());
  }
  std::vector<int> t(p.cod().size(), -1);
  for (std::size_t i = 0; i < p.dom().size(); ++i) {
    int v = f(tr[i]);
    int& slot = t[static_cast<std::size_t>(p(static_cast<int>(i)))];
    if (slot >= 0 && slot != v) return std::nullopt;
    slot = v;
  }
  for (int v : t)
    if (v < 0) return std::nullopt;
  if (!is_continuous(p.cod(), f.cod(), t)) return std::nullopt;
  return Mor::trusted(p.cod(), f.cod(), std::move(t));
}

Obj terminal(Backend b) { return Obj::discrete(b, {"*"}); }

Mor to_terminal(const Obj& x, const Obj& point) {
  if (point.size() != 1) throw Error(ErrorKind::BoundaryMismatch, "target is not a one-point object");
  return Mor(x, point, std::vector<int>(x.size(), 0));
}

Coproduct coproduct(const Obj& a, const Obj& b) {
  if (a.backend() != b.backend()) throw Error(ErrorKind::BackendMismatch, "coproduct of different backends");
  bool clash = false;
  for (const auto& id : a.ids())
    if (b.find(id) >= 0) clash = true;
  std::vector<std::string> ids;
  for (const auto& id : a.ids()) ids.push_back(clash ? "1:" + id : id);
  for (const auto& id : b.ids()) ids.push_back(clash ? "2:" + id : id);
  const std::size_t na = a.size(), n = na + b.size();
  Coproduct c;
  if (a.backend() == Backend::FinSet) {
    c.sum = Obj::finset(std::move(ids));
  } else {
    std::vector<Subset> nb(n, Subset(n));
    for (std::size_t i = 0; i < na; ++i) {
      Subset u = a.nbhd(static_cast<int>(i));
      for (std::size_t j = u.find_first(); j != Subset::npos; j = u.find_next(j)) nb[i].set(j);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      Subset u = b.nbhd(static_cast<int>(i));
      for (std::size_t j = u.find_first(); j != Subset::npos; j = u.find_next(j)) nb[na + i].set(na + j);
    }
    c.sum = Obj::space(std::move(ids), std::move(nb));
  }
  std::vector<int> t1(na), t2(b.size());
  for (std::size_t i = 0; i < na; ++i) t1[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < b.size(); ++i) t2[i] = static_cast<int>(na + i);
  c.in1 = Mor(a, c.sum, std::move(t1));
  c.in2 = Mor(b, c.sum, std::move(t2));
  return c;
}

void for_each_table(std::size_t n, std::size_t k, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> t(n, 0);
  if (n > 0 && k == 0) return;
  for (;;) {
    if (!visit(t)) return;
    std::size_t i = 0;
    while (i < n) {
      if (static_cast<std::size_t>(++t[i]) < k) break;
      t[i] = 0;
      ++i;
    }
    if (i == n) return;
  }
}

std::vector<Mor> all_maps(const Obj& dom, const Obj& cod) {
  if (dom.backend() != cod.backend()) throw Error(ErrorKind::BackendMismatch, "all_maps across backends");
  std::vector<Mor> out;
  for_each_table(dom.size(), cod.size(), [&](const std::vector<int>& t) {
    if (is_continuous(dom, cod, t)) out.push_back(Mor::trusted(dom, cod, t));
    return true;
  });
  return out;
}

}  // namespace groupoidal
