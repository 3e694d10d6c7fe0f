#pragma once

// OpenMP twins of the data-parallel kernels. Each returns exactly what its
// serial counterpart returns; without OpenMP they run serially.

#include <vector>

#include "fibertree/barcode_fiber.hpp"

namespace fibertree {

int available_threads();

std::vector<CellularMergeTree> enumerate_merge_trees_parallel(const Barcode& d);

AuditReport audit_path_parallel(const ConfigPath& path);

Rational matrix_distance_min_over_labelings_parallel(const CellularMergeTree& t1, const CellularMergeTree& t2,
                                                     int bound_n);

// Symmetric matrix of exact sup-norm distances.
std::vector<std::vector<Rational>> pairwise_sup_distances(const std::vector<PLFunction>& fs);
std::vector<std::vector<Rational>> pairwise_sup_distances_parallel(const std::vector<PLFunction>& fs);

}  // namespace fibertree
