#pragma once

#include <string>
#include <vector>

#include "fibertree/pl_function.hpp"

namespace fibertree {

struct MergeNode {
  std::string name;
  Rational height;
  int parent = -1;  // -1 for the root (which carries the infinite ray)
  std::vector<int> children;
};

// Rooted finite tree with heights strictly increasing toward the root.
// Leaves are the nodes without children; their order in leaves() is the
// labelling l_1..l_n used by induced matrices and configurations.
class CellularMergeTree {
 public:
  // Nodes reference each other by index. `leaf_order` lists every leaf node
  // exactly once; if empty, leaves are labelled in node order.
  explicit CellularMergeTree(std::vector<MergeNode> nodes, std::vector<int> leaf_order = {});

  size_t size() const { return nodes_.size(); }
  const MergeNode& node(int id) const { return nodes_.at(static_cast<size_t>(id)); }
  const std::vector<MergeNode>& nodes() const { return nodes_; }
  int root() const { return root_; }
  bool is_leaf(int id) const { return node(id).children.empty(); }

  // Leaf node ids in label order.
  const std::vector<int>& leaves() const { return leaves_; }
  size_t leaf_count() const { return leaves_.size(); }
  // Internal node ids ordered by height, ties by node id.
  const std::vector<int>& internal_nodes() const { return internal_; }
  // Label position of a leaf node, -1 for internal nodes.
  int leaf_label(int id) const { return label_.at(static_cast<size_t>(id)); }

  // a is a descendant of b (a == b counts).
  bool is_ancestor(int b, int a) const;
  int lca(int a, int b) const;
  // Label positions of the leaves below v, ascending.
  std::vector<int> descendant_leaves(int v) const;
  std::optional<int> find(std::string_view name) const;

 private:
  std::vector<MergeNode> nodes_;
  int root_ = -1;
  std::vector<int> leaves_;
  std::vector<int> internal_;
  std::vector<int> label_;
  std::vector<int> depth_;
};

// Incremental construction; names default to l<k> / v<k> in creation order.
class MergeTreeBuilder {
 public:
  int leaf(const Rational& height, std::string name = {});
  int merge(const Rational& height, std::vector<int> children, std::string name = {});
  CellularMergeTree build() const;

 private:
  std::vector<MergeNode> nodes_;
  int leaves_made_ = 0;
  int merges_made_ = 0;
};

// Same tree with leaves relabelled l1.. by (height, previous label) and
// internal nodes renamed v1.. by (height, node id).
CellularMergeTree standardize(const CellularMergeTree& t);

struct MergeTreeResult {
  CellularMergeTree tree;
  std::vector<TreeSubset> leaf_regions;             // by leaf label
  std::vector<std::vector<TreePoint>> merge_points;  // by position in internal_nodes()
};

MergeTreeResult compute_merge_tree(const PLFunction& f);

struct InducedMatrix {
  std::vector<std::vector<Rational>> entries;
  size_t size() const { return entries.size(); }
  bool operator==(const InducedMatrix& o) const { return entries == o.entries; }
};

// `labels` holds leaf label positions (repetitions allowed). Empty means the
// identity labelling.
InducedMatrix induced_matrix(const CellularMergeTree& t, const std::vector<int>& labels = {});

// Child-order-invariant encoding with exact heights; nodes with a single child
// are contracted.
std::string canonical_form(const CellularMergeTree& t);
bool is_isomorphic(const CellularMergeTree& a, const CellularMergeTree& b);

bool is_generic(const CellularMergeTree& t);

// max_ij |M1_ij - M2_ij| for the given labellings.
Rational matrix_distance(const CellularMergeTree& t1, const CellularMergeTree& t2, const std::vector<int>& labels1,
                         const std::vector<int>& labels2);
// min_ij |M1_ij - M2_ij|, the literal min-over-entries reading.
Rational matrix_entry_min_deviation(const CellularMergeTree& t1, const CellularMergeTree& t2,
                                    const std::vector<int>& labels1, const std::vector<int>& labels2);
// Minimum of matrix_distance over all surjective labellings of sizes
// max(n1, n2)..bound_n. Exponential; meant for a handful of leaves.
Rational matrix_distance_min_over_labelings(const CellularMergeTree& t1, const CellularMergeTree& t2, int bound_n);

// Labelling enumeration shared with the parallel variant: sorted surjections
// of {0..size-1} onto {0..targets-1}, and all surjections.
std::vector<std::vector<int>> sorted_surjections(int size, int targets);
std::vector<std::vector<int>> all_surjections(int size, int targets);

}  // namespace fibertree
