#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibertree/barcode.hpp"
#include "fibertree/config_space.hpp"

namespace fibertree {

// Number of merge trees with barcode D: the product over finite bars of the
// number of bars strictly containing it. D must be generic and realizable.
std::uint64_t count_components(const Barcode& d);

// One tree per choice of a containing parent bar for every finite bar,
// sorted by canonical form. Leaves are labelled by increasing birth.
std::vector<CellularMergeTree> enumerate_merge_trees(const Barcode& d);

// The tree for the given mixed-radix index in [0, count_components(d)).
// Exposed for the parallel enumeration.
CellularMergeTree merge_tree_for_choice(const Barcode& d, std::uint64_t index);

struct FiberCheck {
  bool member = false;
  std::string diagnostic;
};

FiberCheck verify_fiber_membership(const PLFunction& f, const CellularMergeTree& t);

// Leaves in depth-first order, evenly spaced inside edge 0.
std::vector<TreePoint> default_configuration(const GeometricTree& tree, const CellularMergeTree& t);

// PL function whose merge tree is T, with minima at the given points (or the
// default configuration). Saddles sit at midpoints of the bridges between
// sibling hulls.
PLFunction realize_function(const CellularMergeTree& t, std::shared_ptr<const GeometricTree> tree,
                            std::optional<std::vector<TreePoint>> points = std::nullopt);

bool same_component(const PLFunction& f, const PLFunction& g);

// -1 + sum over vertices of (deg - 1)(deg - 2).
long circle_count(const GeometricTree& tree);

}  // namespace fibertree
