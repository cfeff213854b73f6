#ifndef GROUPOIDAL_DETAIL_HPP
#define GROUPOIDAL_DETAIL_HPP

#include <cstddef>
#include <initializer_list>
#include <string>

#include "groupoidal/error.hpp"

namespace groupoidal::detail {

inline std::size_t ix(int i) { return static_cast<std::size_t>(i); }
inline int in(std::size_t i) { return static_cast<int>(i); }

inline std::string tuple_str(std::initializer_list<std::string> xs) {
  std::string out = "(";
  bool first = true;
  for (const auto& x : xs) {
    if (!first) out += ", ";
    out += x;
    first = false;
  }
  return out + ")";
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::BoundaryMismatch, what);
}

}  // namespace groupoidal::detail

#endif
