#pragma once

#include <memory>
#include <random>

#include "fibertree/barcode_fiber.hpp"

namespace fibertree {

using Rng = std::mt19937_64;

// Uniform rational k/den with lo*den <= k <= hi*den.
Rational random_rational(Rng& rng, long lo, long hi, long den);

// Random labelled tree: vertex k attaches to a uniform earlier vertex; edge
// lengths are drawn from {1/2, 1, 3/2, 2}.
GeometricTree random_tree(Rng& rng, int vertices);
// Random tree with at least one vertex of degree >= 3 (needs >= 4 vertices).
GeometricTree random_branching_tree(Rng& rng, int vertices);

// Values on vertices and up to `max_breakpoints` breakpoints per edge, all
// multiples of 1/4 in [0, 8].
PLFunction random_pl_function(Rng& rng, std::shared_ptr<const GeometricTree> tree, int max_breakpoints = 2);

// Generic realizable barcode with `bars` bars (2 * bars - 1 distinct
// endpoints).
Barcode random_generic_barcode(Rng& rng, int bars);

// Uniform-ish member of the configuration space for the given merge tree:
// rejection sampling, then a constructive fallback along a random leaf-to-leaf
// arc with random child orders.
std::vector<TreePoint> random_configuration(Rng& rng, const GeometricTree& tree, const CellularMergeTree& t);

}  // namespace fibertree
