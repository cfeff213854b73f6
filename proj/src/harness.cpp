#include <algorithm>

#include "groupoidal/site.hpp"

namespace groupoidal {

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (c.required && !c.pass) return false;
  return true;
}

const AxiomCheck* AxiomReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

struct Indexed {
  const Sample& sample;
  std::vector<std::vector<std::size_t>> into, from;  // map indices by cod / dom
  std::vector<char> cover;

  explicit Indexed(const Sample& s) : sample(s), into(s.objects.size()), from(s.objects.size()), cover(s.maps.size()) {
    for (std::size_t k = 0; k < s.maps.size(); ++k) {
      into[obj(s.maps[k].cod())].push_back(k);
      from[obj(s.maps[k].dom())].push_back(k);
      cover[k] = is_cover(s.maps[k]);
    }
  }

  std::size_t obj(const Obj& o) const {
    for (std::size_t i = 0; i < sample.objects.size(); ++i)
      if (sample.objects[i].identical(o)) return i;
    for (std::size_t i = 0; i < sample.objects.size(); ++i)
      if (sample.objects[i] == o) return i;
    throw Error(ErrorKind::BoundaryMismatch, "sample map touches an object outside the sample: " + o.show());
  }
};

class Tally {
 public:
  Tally(AxiomReport& r, std::size_t budget) : report_(r), budget_(budget) { report_.checks.reserve(32); }
  AxiomCheck& open(std::string id, std::string statement, bool required = true) {
    report_.checks.push_back({std::move(id), std::move(statement), required, true, 0, {}});
    return report_.checks.back();
  }
  void tick(AxiomCheck& c) {
    ++c.instances;
    if (++report_.evaluated > budget_)
      throw Error(ErrorKind::BudgetExceeded, "axiom harness exceeded its budget of " + std::to_string(budget_));
  }
  static void fail(AxiomCheck& c, const std::string& witness) {
    if (c.pass) c.witness = witness;
    c.pass = false;
  }

 private:
  AxiomReport& report_;
  std::size_t budget_;
};

std::string arrow(const Mor& f) { return f.dom().show() + " -> " + f.cod().show() + " " + f.show(); }

}  // namespace

AxiomReport axiom_harness(const Sample& sample, const HarnessOptions& opts) {
  AxiomReport report;
  if (!sample.objects.empty()) report.backend = sample.objects.front().backend();
  Indexed ix(sample);
  Tally tally(report, opts.budget);
  const auto& maps = sample.maps;
  const std::size_t nobj = sample.objects.size();

  {
    auto& c = tally.open("iso-covers", "isomorphisms are covers");
    for (std::size_t k = 0; k < maps.size(); ++k) {
      tally.tick(c);
      if (is_iso(maps[k]) && !ix.cover[k]) Tally::fail(c, arrow(maps[k]));
    }
  }
  {
    auto& c = tally.open("composite-covers", "composites of covers are covers");
    for (std::size_t y = 0; y < nobj; ++y)
      for (std::size_t gi : ix.into[y]) {
        if (!ix.cover[gi]) continue;
        for (std::size_t fi : ix.from[y]) {
          if (!ix.cover[fi]) continue;
          tally.tick(c);
          if (!is_cover(compose(maps[fi], maps[gi]))) Tally::fail(c, arrow(maps[fi]) + " after " + arrow(maps[gi]));
        }
      }
  }
  {
    auto& pb = tally.open("pullback-covers", "the projection of a fibre product along a cover is a cover");
    auto& loc = tally.open("cover-local", "f is a cover when g and the second projection are covers");
    auto& iso = tally.open("iso-local", "f is an isomorphism iff its pull-back along a cover is one");
    for (std::size_t x = 0; x < nobj; ++x)
      for (std::size_t gi : ix.into[x]) {
        if (!ix.cover[gi]) continue;
        for (std::size_t fi : ix.into[x]) {
          const Mor& f = maps[fi];
          const Mor& g = maps[gi];
          FibreProduct fp = fibre_product(f, g);
          tally.tick(pb);
          if (!is_cover(fp.pr1)) Tally::fail(pb, "f = " + arrow(f) + ", g = " + arrow(g));
          tally.tick(loc);
          if (is_cover(fp.pr2) && !ix.cover[fi]) Tally::fail(loc, "f = " + arrow(f) + ", g = " + arrow(g));
          tally.tick(iso);
          if (is_iso(fp.pr2) != is_iso(f)) Tally::fail(iso, "f = " + arrow(f) + ", g = " + arrow(g));
        }
      }
  }
  {
    auto& coeq = tally.open("subcanonical", "every cover is the coequaliser of its kernel pair");
    auto& sheaf = tally.open("representable-sheaves",
                             "maps out of the base biject with maps out of the cover that agree on the kernel pair");
    for (std::size_t k = 0; k < maps.size(); ++k) {
      if (!ix.cover[k]) continue;
      const Mor& f = maps[k];
      FibreProduct kp = fibre_product(f, f);
      Coequalizer q = coequalizer(kp.pr1, kp.pr2);
      tally.tick(coeq);
      auto h = descend(q, f);
      if (!h || !is_iso(*h)) Tally::fail(coeq, arrow(f));
      for (std::size_t w = 0; w < nobj; ++w) {
        const Obj& W = sample.objects[w];
        if (W.size() > opts.sheaf_target_max) continue;
        std::size_t compatible = 0, factored = 0;
        for_each_table(f.dom().size(), W.size(), [&](const std::vector<int>& t) {
          if (!is_continuous(f.dom(), W, t)) return true;
          for (const auto& [a, b] : kp.pairs)
            if (t[static_cast<std::size_t>(a)] != t[static_cast<std::size_t>(b)]) return true;
          ++compatible;
          if (factor_through(f, Mor::trusted(f.dom(), W, t))) ++factored;
          return true;
        });
        std::size_t below = 0;
        for_each_table(f.cod().size(), W.size(), [&](const std::vector<int>& t) {
          below += is_continuous(f.cod(), W, t);
          return true;
        });
        tally.tick(sheaf);
        if (compatible != factored || compatible != below)
          Tally::fail(sheaf, arrow(f) + " against W = " + W.show());
      }
    }
  }
  {
    auto& c = tally.open("two-out-of-three", "f is a cover when f after p and p are covers");
    auto& sat = tally.open("saturated", "f is a cover whenever f after p is one", false);
    for (std::size_t y = 0; y < nobj; ++y)
      for (std::size_t pi : ix.into[y])
        for (std::size_t fi : ix.from[y]) {
          Mor fp = compose(maps[fi], maps[pi]);
          bool composite_cover = is_cover(fp);
          if (ix.cover[pi]) {
            tally.tick(c);
            if (composite_cover && !ix.cover[fi]) Tally::fail(c, "f = " + arrow(maps[fi]) + ", p = " + arrow(maps[pi]));
          }
          tally.tick(sat);
          if (composite_cover && !ix.cover[fi])
            Tally::fail(sat, "f = " + arrow(maps[fi]) + ", p = " + arrow(maps[pi]));
        }
    // prefer the coproduct-shaped witness: f not open, f2 = (f, id), f1 the inclusion
    for (std::size_t k = 0; k < maps.size() && report.backend == Backend::FinTop; ++k) {
      const Mor& f = maps[k];
      if (is_open_map(f)) continue;
      Coproduct s = coproduct(f.dom(), f.cod());
      std::vector<int> t(s.sum.size());
      for (std::size_t i = 0; i < f.dom().size(); ++i) t[i] = f(static_cast<int>(i));
      for (std::size_t i = 0; i < f.cod().size(); ++i) t[f.dom().size() + i] = static_cast<int>(i);
      Mor f2(s.sum, f.cod(), t);
      Mor f1 = s.in2;
      tally.tick(sat);
      if (is_cover(compose(f2, f1)) && !is_cover(f2)) {
        sat.pass = false;
        sat.witness = "f = " + arrow(f) + " is not open; f2 = (f, id) = " + arrow(f2) + " is not a cover while f2 after the inclusion " +
                      arrow(f1) + " is the identity";
        break;
      }
    }
  }
  {
    auto& c = tally.open("final-object", "a final object exists and every map to it is a cover");
    std::vector<std::size_t> points;
    for (std::size_t i = 0; i < nobj; ++i)
      if (sample.objects[i].size() == 1) points.push_back(i);
    if (points.empty()) Tally::fail(c, "no one-point object in the sample");
    for (std::size_t p : points)
      for (std::size_t w = 0; w < nobj; ++w) {
        const Obj& W = sample.objects[w];
        if (W.empty() && opts.terminal_nonempty_only) continue;
        tally.tick(c);
        Mor t = to_terminal(W, sample.objects[p]);
        if (!is_cover(t)) Tally::fail(c, arrow(t));
      }
  }
  {
    auto& c = tally.open("product-covers", "products of covers are covers");
    std::size_t pt = nobj;
    for (std::size_t i = 0; i < nobj && pt == nobj; ++i)
      if (sample.objects[i].size() == 1) pt = i;
    if (pt < nobj) {
      const Obj& P = sample.objects[pt];
      std::vector<std::size_t> covers;
      for (std::size_t k = 0; k < maps.size(); ++k)
        if (ix.cover[k]) covers.push_back(k);
      for (std::size_t a : covers)
        for (std::size_t b : covers) {
          const Mor& f1 = maps[a];
          const Mor& f2 = maps[b];
          FibreProduct top = fibre_product(to_terminal(f1.dom(), P), to_terminal(f2.dom(), P));
          FibreProduct bot = fibre_product(to_terminal(f1.cod(), P), to_terminal(f2.cod(), P));
          tally.tick(c);
          if (!is_cover(fibre_map(top, bot, f1, f2))) Tally::fail(c, arrow(f1) + " x " + arrow(f2));
        }
    }
  }
  return report;
}

}  // namespace groupoidal
