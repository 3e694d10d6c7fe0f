#pragma once

// Brute-force references used by the unit tests and the acceptance runner.
// They reuse only the data types of the library, never its algorithms.

#include <cstdint>
#include <vector>

#include "fibertree/barcode_fiber.hpp"

namespace oracle {

using fibertree::Barcode;
using fibertree::CellularMergeTree;
using fibertree::GeometricTree;
using fibertree::PLFunction;
using fibertree::Rational;
using fibertree::TreePoint;

// Exact distances between the given points, by splitting edges at the points
// and running Dijkstra on the refined graph.
std::vector<std::vector<Rational>> point_distances(const GeometricTree& tree, const std::vector<TreePoint>& pts);

// Is q on the geodesic between a and b (distance additivity).
bool between(const GeometricTree& tree, const TreePoint& a, const TreePoint& b, const TreePoint& q);

struct GaugedTree {
  CellularMergeTree tree;
  Barcode barcode;  // elder rule, computed while merging
};

// Every binary merge tree whose leaves sit at `births` and whose merges sit
// at `deaths` (all values distinct), built by choosing which two live
// components merge at each death. Leaves are labelled by increasing birth.
std::vector<GaugedTree> all_gauged_trees(std::vector<Rational> births, std::vector<Rational> deaths);

// Number of gauged trees on the endpoints of D whose barcode is D.
std::uint64_t count_by_brute_force(const Barcode& d);

struct SweepResult {
  std::vector<Rational> minimum_values;
  std::vector<TreePoint> representatives;  // one knot inside each minimum
  std::vector<std::vector<Rational>> merge_heights;  // t_ij, diagonal = value
};

// Union-find over knots added in increasing value.
SweepResult sublevel_sweep(const PLFunction& f);

// Left child of each internal node: the child owning the leaf met first
// along the arc. Indexed by node id, -1 for leaves.
std::vector<int> left_children(const CellularMergeTree& t, const std::vector<Rational>& leaf_positions);

}  // namespace oracle
