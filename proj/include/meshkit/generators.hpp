#pragma once

#include <string>
#include <utility>
#include <vector>

#include "meshkit/quiver.hpp"

namespace meshkit {

// Finite tree given by node ids and unordered edges. Must be connected and
// acyclic.
struct TreeSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  static TreeSpec line(int n);  // A_n: 1 - 2 - ... - n
  static TreeSpec d4();         // central node 2 with leaves 1, 3, 4
};

// Repetition quiver Z(tree) restricted to slices i0..i1. Edge orientation is
// fixed by a breadth-first ordering from the lexicographically least tree
// vertex. Boundary slices are flagged frontier.
TranslationQuiver gen_ztree(const TreeSpec& t, int i0, int i1);

// Stable tube ZA_inf / <tau^p> truncated to rows 1..h; row h is frontier.
TranslationQuiver gen_tube(int rank_p, int rows_h);

// AR quiver of linearly oriented A_n: vertices (a,b), 1 <= a <= b <= n.
// Genuinely finite, no frontier.
TranslationQuiver gen_triangle_an(int n);

// Preprojective-style chain v_0..v_m with two parallel arrows per step.
// v_0, v_1 projective; the last two vertices frontier.
TranslationQuiver gen_kronecker(int m);

}  // namespace meshkit
