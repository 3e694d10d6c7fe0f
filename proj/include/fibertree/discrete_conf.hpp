#pragma once

#include "fibertree/tree_geometry.hpp"

namespace fibertree {

struct BettiNumbers {
  long b0 = 0;
  long b1 = 0;
  long b2 = 0;
};

// Mod-2 Betti numbers of the discrete ordered configuration complex of
// `points` (1 or 2) points on the tree, after splitting every edge into
// `pieces` equal parts. Cells are products of closed cells with pairwise
// disjoint closures.
BettiNumbers discrete_conf_betti(const GeometricTree& tree, int points, int pieces = 2);

long discrete_conf2_betti1(const GeometricTree& tree, int pieces = 2);

// Rank over GF(2) of a matrix given as rows of column indices.
long gf2_rank(const std::vector<std::vector<int>>& rows, int columns);

}  // namespace fibertree
