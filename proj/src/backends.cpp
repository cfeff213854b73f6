#include "groupoidal/backends.hpp"

#include <set>

namespace groupoidal {

Obj make_finset(const FinSetSpec& spec) { return Obj::finset(spec.elements); }

Obj make_finspace(const FinSpaceSpec& spec) {
  Obj carrier = Obj::finset(spec.elements);  // catches duplicates early
  std::vector<Subset> opens;
  for (const auto& o : spec.opens) {
    Subset s(carrier.size());
    for (const auto& id : o) {
      int i = carrier.find(id);
      if (i < 0) throw Error(ErrorKind::NotATopology, "open set mentions unknown element '" + id + "'", id);
      s.set(static_cast<std::size_t>(i));
    }
    opens.push_back(s);
  }
  return Obj::space_from_opens(spec.elements, opens);
}

bool fintop_is_open(const Mor& f) {
  if (f.dom().backend() != Backend::FinTop || f.cod().backend() != Backend::FinTop)
    throw Error(ErrorKind::BackendMismatch, "fintop_is_open needs FinTop spaces");
  return is_open_map(f);
}

std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

std::vector<Obj> all_topologies(const std::vector<std::string>& ids) {
  // a finite topology is a preorder; enumerate the relations that are reflexive and transitive
  const std::size_t n = ids.size();
  std::vector<std::pair<std::size_t, std::size_t>> offdiag;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) offdiag.emplace_back(i, j);
  std::vector<Obj> out;
  const std::size_t m = offdiag.size();
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<Subset> nb(n, Subset(n));
    for (std::size_t i = 0; i < n; ++i) nb[i].set(i);
    for (std::size_t k = 0; k < m; ++k)
      if (mask & (1UL << k)) nb[offdiag[k].first].set(offdiag[k].second);
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = nb[i].find_first(); j != Subset::npos; j = nb[i].find_next(j))
        if (!nb[j].is_subset_of(nb[i])) {
          transitive = false;
          break;
        }
    if (transitive) out.push_back(Obj::space(ids, nb));
  }
  return out;
}

namespace {

Sample with_all_maps(std::vector<Obj> objects) {
  Sample s;
  s.objects = std::move(objects);
  for (const auto& a : s.objects)
    for (const auto& b : s.objects) {
      auto ms = all_maps(a, b);
      s.maps.insert(s.maps.end(), ms.begin(), ms.end());
    }
  return s;
}

}  // namespace

Sample finset_sample(std::size_t max_size, bool include_empty) {
  std::vector<Obj> objs;
  for (std::size_t n = include_empty ? 0 : 1; n <= max_size; ++n) objs.push_back(Obj::finset(numbered_ids(n)));
  return with_all_maps(std::move(objs));
}

Sample fintop_sample(std::size_t max_points, bool include_empty) {
  std::vector<Obj> objs;
  for (std::size_t n = include_empty ? 0 : 1; n <= max_points; ++n) {
    auto t = all_topologies(numbered_ids(n));
    objs.insert(objs.end(), t.begin(), t.end());
  }
  return with_all_maps(std::move(objs));
}

Obj sierpinski() {
  return make_finspace({"SIER", {"0", "1"}, {{}, {"1"}, {"0", "1"}}});
}

Obj discrete_space(std::size_t n) { return Obj::discrete(Backend::FinTop, numbered_ids(n)); }

Obj indiscrete_space(std::size_t n) {
  std::vector<Subset> nb(n, Subset(n));
  for (auto& s : nb) s.set();
  return Obj::space(numbered_ids(n), std::move(nb));
}

}  // namespace groupoidal
