#ifndef GROUPOIDAL_BACKENDS_HPP
#define GROUPOIDAL_BACKENDS_HPP

#include <string>
#include <vector>

#include "groupoidal/site.hpp"

namespace groupoidal {

struct FinSetSpec {
  std::string name;
  std::vector<std::string> elements;
};

struct FinSpaceSpec {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::vector<std::string>> opens;
};

Obj make_finset(const FinSetSpec& spec);
Obj make_finspace(const FinSpaceSpec& spec);

// FinTop only: images of opens are open
bool fintop_is_open(const Mor& f);

// every topology on n labelled points, as minimal-neighbourhood objects
std::vector<Obj> all_topologies(const std::vector<std::string>& ids);
std::vector<std::string> numbered_ids(std::size_t n);

// objects of sizes 0..max_size (0 only if include_empty) and every map between them
Sample finset_sample(std::size_t max_size, bool include_empty = true);
Sample fintop_sample(std::size_t max_points, bool include_empty = true);

// a few named spaces used all over the tests
Obj sierpinski();                       // {0, 1}, opens {}, {1}, {0, 1}
Obj discrete_space(std::size_t n);      // ids 0..n-1
Obj indiscrete_space(std::size_t n);

}  // namespace groupoidal

#endif
