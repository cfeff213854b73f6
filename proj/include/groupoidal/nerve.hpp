#ifndef GROUPOIDAL_NERVE_HPP
#define GROUPOIDAL_NERVE_HPP

#include <array>
#include <map>

#include "groupoidal/bibundle.hpp"

namespace groupoidal {

// An n-simplex of the nerve, stored fully expanded.
// X_ij for i <= j, with r_ij: X_ij -> X_i, s_ij: X_ij -> X_j and
// m_ijk: X_ij x_{s_ij, X_j, r_jk} X_jk -> X_ik.
struct NSimplex {
  std::size_t n = 0;
  std::vector<Obj> X;
  std::map<std::array<int, 2>, Obj> XX;
  std::map<std::array<int, 2>, Mor> r, s;
  std::map<std::array<int, 3>, Mor> m;

  const Obj& x(int i, int j) const { return XX.at({i, j}); }
  const Mor& rr(int i, int j) const { return r.at({i, j}); }
  const Mor& ss(int i, int j) const { return s.at({i, j}); }
  const Mor& mm(int i, int j, int k) const { return m.at({i, j, k}); }
};

bool operator==(const NSimplex& a, const NSimplex& b);
inline bool operator!=(const NSimplex& a, const NSimplex& b) { return !(a == b); }

// Findings: r-cover[i,j], s-cover[i], boundary[i,j,k], assoc[i,j,k,l],
// shear-left[i,j,k] (i = j or j = k), shear-right[i,j,k] (j = k), then the
// derived groupoid[i], functor[i,k] and composite-iso[i,j,k].
// Throws BoundaryMismatch when the tables do not fit together.
ValidationReport validate_simplex(const NSimplex& x);

// the data G_i on the diagonal; nullopt if units or inverses are missing
std::optional<Groupoid> diagonal_groupoid(const NSimplex& x, int i);
// X_ik with the actions m_iik and m_ikk; requires the diagonal groupoids
Bibundle edge_bibundle(const NSimplex& x, int i, int k);

// s_ij covers, and (pr1, m) and (m, pr2) isomorphisms for all i <= j <= k
ValidationReport validate_equivalence_simplex(const NSimplex& x);

// phi: [n] -> [m] as its table; throws NotMonotone
NSimplex restrict_simplex(const std::vector<int>& phi, const NSimplex& x);
// i -> n - i; r and s swap and m_ijk(a, b) becomes m(b, a)
NSimplex reverse_simplex(const NSimplex& x);

NSimplex simplex0(const Groupoid& g);
NSimplex simplex1(const Bibundle& x);
// groupoids and bibundles on the diagonal and edges; inner[i,j,k] for i < j < k,
// absent entries are left out of m
NSimplex simplex_from(const std::map<std::array<int, 2>, Bibundle>& edges,
                      const std::map<std::array<int, 3>, Mor>& inner);

// X_ij the left-nested composite of chain[i..j-1]; m_ijk concatenates representatives
NSimplex chain_simplex(const std::vector<Bibundle>& chain);

// filler with X_02 = x01 x_H x12 and m_012 the quotient map; throws MiddleMismatch
NSimplex horn_fill_inner2(const Bibundle& x01, const Bibundle& x12);

struct FillerSearch {
  std::vector<Mor> fillers;
  std::size_t candidates = 0;  // complete assignments that reached validation
  std::string rejected;        // set when the given data do not fit together
};
// every m for the given index triple that makes x valid; the entry for it in x is ignored
FillerSearch find_fillers(const NSimplex& x, std::array<int, 3> missing, std::size_t budget = 1000000);
// 3-simplex missing m_013 or m_023 (the inner horns); other triples throw BoundaryMismatch
FillerSearch unique_inner3_check(const NSimplex& x, std::array<int, 3> missing);

}  // namespace groupoidal

#endif
