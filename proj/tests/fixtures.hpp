#pragma once

// Shared instances for the engine tests.

#include <array>
#include <string>
#include <vector>

#include "itopo/common.hpp"

namespace fixtures {

using itopo::Arc;
using itopo::VertexId;

// Twelve named vertices; ids follow the initial order a b w c d e f g h i v j.
enum Name : VertexId { a, b, w, c, d, e, f, g, h, i, v, j };

inline constexpr std::array<char, 12> kLetters{'a', 'b', 'w', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'v', 'j'};

inline std::string spell(const std::vector<VertexId>& order) {
  std::string s;
  for (VertexId x : order) s.push_back(kLetters.at(x));
  return s;
}

// Arcs present before (v, w) arrives. New arcs are prepended to incidence
// lists, so each list is inserted back to front: w's out-list then reads
// (w,h),(w,c); f's reads (f,h),(f,i); v's in-list (d,v),(g,v); d's (a,d),(b,d).
inline std::vector<Arc> two_way_instance() {
  return {{w, c}, {w, h}, {c, f}, {f, i}, {f, h}, {h, j}, {g, v}, {d, v}, {e, g}, {b, d}, {a, d}};
}

inline constexpr Arc kTrigger{v, w};

}  // namespace fixtures
