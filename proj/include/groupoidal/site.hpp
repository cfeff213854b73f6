#ifndef GROUPOIDAL_SITE_HPP
#define GROUPOIDAL_SITE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "groupoidal/error.hpp"

namespace groupoidal {

using Subset = boost::dynamic_bitset<>;

enum class Backend { FinSet, FinTop };

const char* backend_name(Backend b);

// A finite carrier with backend structure. FinTop spaces are held by the
// minimal open neighbourhood of each point; opens() rebuilds the family.
class Obj {
 public:
  Obj();

  static Obj finset(std::vector<std::string> ids);
  // nbhd[i] must be the least open set containing i
  static Obj space(std::vector<std::string> ids, std::vector<Subset> nbhd);
  static Obj space_from_opens(std::vector<std::string> ids, const std::vector<Subset>& opens);
  static Obj discrete(Backend b, std::vector<std::string> ids);

  Backend backend() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  const std::string& id(int i) const;
  const std::vector<std::string>& ids() const;
  int find(const std::string& id) const;  // -1 when absent
  int at(const std::string& id) const;    // throws UnknownElement

  // least open set containing i (singleton for FinSet)
  Subset nbhd(int i) const;
  bool is_open(const Subset& s) const;
  Subset open_hull(const Subset& s) const;
  std::vector<Subset> opens() const;
  // specialization preorder: leq(x, y) iff y lies in every open containing x
  bool leq(int x, int y) const;

  Subset none() const { return Subset(size()); }
  Subset all() const {
    Subset s(size());
    s.set();
    return s;
  }
  Subset subset(const std::vector<int>& elems) const;
  std::string show(const Subset& s) const;
  std::string show() const;

  bool identical(const Obj& o) const { return d_ == o.d_; }
  friend bool operator==(const Obj& a, const Obj& b);
  friend bool operator!=(const Obj& a, const Obj& b) { return !(a == b); }

  struct Data;  // defined in site.cpp

 private:
  std::shared_ptr<const Data> d_;
  explicit Obj(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

class Mor {
 public:
  Mor();
  // validated: total, in range, same backend, continuous for FinTop
  Mor(Obj dom, Obj cod, std::vector<int> table);
  static Mor from_ids(Obj dom, Obj cod, const std::vector<std::pair<std::string, std::string>>& assoc);
  static Mor identity(const Obj& x);
  static Mor constant(const Obj& dom, const Obj& cod, int value);
  // skips validation; callers guarantee the structure
  static Mor trusted(Obj dom, Obj cod, std::vector<int> table);

  const Obj& dom() const { return dom_; }
  const Obj& cod() const { return cod_; }
  int operator()(int i) const { return table_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& table() const { return table_; }
  const std::string& image(const std::string& id) const;

  std::string show() const;
  friend bool operator==(const Mor& a, const Mor& b);
  friend bool operator!=(const Mor& a, const Mor& b) { return !(a == b); }

 private:
  Obj dom_, cod_;
  std::vector<int> table_;
};

Mor tabulate(const Obj& dom, const Obj& cod, const std::function<int(int)>& f);
bool is_continuous(const Obj& dom, const Obj& cod, const std::vector<int>& table);
// same predicate computed from the open-set families directly
bool is_continuous_by_opens(const Obj& dom, const Obj& cod, const std::vector<int>& table);
// same predicate through monotonicity of the specialization preorder
bool is_monotone(const Obj& dom, const Obj& cod, const std::vector<int>& table);

// f after g
Mor compose(const Mor& f, const Mor& g);
// the same map re-expressed over equal (possibly reordered) objects
Mor rebase(const Mor& f, const Obj& dom, const Obj& cod);

Subset image(const Mor& f, const Subset& s);
Subset preimage(const Mor& f, const Subset& s);
bool is_surjective(const Mor& f);
bool is_injective(const Mor& f);
bool is_open_map(const Mor& f);
bool is_cover(const Mor& f);
bool is_iso(const Mor& f);
std::optional<Mor> inverse(const Mor& f);

// element id of a pair in a fibre-product apex
std::string pair_id(const std::string& l, const std::string& r);

struct FibreProduct {
  Obj apex;
  Mor pr1, pr2;
  Mor f, g;  // the two legs
  std::vector<std::pair<int, int>> pairs;

  int find(int l, int r) const;
  int at(int l, int r) const;
  std::size_t size() const { return pairs.size(); }

  std::vector<int> lookup;  // dense (l, r) -> apex index or -1
};

FibreProduct fibre_product(const Mor& f, const Mor& g);
// the map W -> apex induced by a: W -> Y and b: W -> U with f a = g b
Mor pairing(const FibreProduct& fp, const Mor& a, const Mor& b);
// a x_X b between two fibre products over the same base legs
Mor fibre_map(const FibreProduct& from, const FibreProduct& to, const Mor& a, const Mor& b);

struct Coequalizer {
  Obj quotient;
  Mor proj;
  std::vector<std::vector<int>> classes;
  bool proj_is_cover = false;
};

Coequalizer coequalizer(const Mor& f, const Mor& g);
// quotient of x by the equivalence generated by the given pairs
Coequalizer quotient_by(const Obj& x, const std::vector<std::pair<int, int>>& relations);
// unique h with h o q.proj = f; nullopt when f is not constant on classes
std::optional<Mor> descend(const Coequalizer& q, const Mor& f);
// unique h with h o p = f for a surjection p; nullopt if f does not factor
std::optional<Mor> factor_through(const Mor& p, const Mor& f);

Obj terminal(Backend b);
Mor to_terminal(const Obj& x, const Obj& point);
struct Coproduct {
  Obj sum;
  Mor in1, in2;
};
Coproduct coproduct(const Obj& a, const Obj& b);

// all structure-preserving maps dom -> cod
std::vector<Mor> all_maps(const Obj& dom, const Obj& cod);
void for_each_table(std::size_t n, std::size_t k, const std::function<bool(const std::vector<int>&)>& visit);

// ---- axiom harness

struct AxiomCheck {
  std::string id;
  std::string statement;
  bool required = true;  // saturation is informational only
  bool pass = true;
  std::size_t instances = 0;
  std::string witness;
};

struct AxiomReport {
  Backend backend = Backend::FinSet;
  std::vector<AxiomCheck> checks;
  std::size_t evaluated = 0;

  bool all_pass() const;
  const AxiomCheck* find(const std::string& id) const;
};

struct Sample {
  std::vector<Obj> objects;
  std::vector<Mor> maps;
};

struct HarnessOptions {
  std::size_t budget = 200000000;
  bool terminal_nonempty_only = true;
  std::size_t sheaf_target_max = 3;
};

AxiomReport axiom_harness(const Sample& sample, const HarnessOptions& opts = {});

}  // namespace groupoidal

#endif
