#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fibertree/rational.hpp"

namespace fibertree {

using VertexId = int;
using EdgeId = int;

// An edge is parameterized by t in [0,1], with t = 0 at `u` and t = 1 at `v`.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational length;
};

// Finite metric tree with positive rational edge lengths. Immutable once
// built; the constructor rejects cycles, disconnection, self-loops, parallel
// edges and non-positive lengths.
class GeometricTree {
 public:
  GeometricTree(std::vector<std::string> vertex_names, std::vector<Edge> edges);

  size_t vertex_count() const { return names_.size(); }
  size_t edge_count() const { return edges_.size(); }

  const std::string& name(VertexId v) const { return names_.at(static_cast<size_t>(v)); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }
  std::span<const EdgeId> incident(VertexId v) const { return incident_.at(static_cast<size_t>(v)); }
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  VertexId opposite(EdgeId e, VertexId v) const;

  Rational vertex_distance(VertexId a, VertexId b) const;
  // Vertices on the unique path from a to b, both ends included.
  std::vector<VertexId> vertex_path(VertexId a, VertexId b) const;

  bool has_branch_point() const;
  const Rational& min_edge_length() const { return min_length_; }
  Rational total_length() const;

  bool operator==(const GeometricTree& other) const;

 private:
  VertexId lca(VertexId a, VertexId b) const;

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  // rooted at vertex 0
  std::vector<VertexId> parent_;
  std::vector<int> depth_;
  std::vector<Rational> root_distance_;
  Rational min_length_;
};

// A point of the realization. Points at parameter 0 or 1 are stored in vertex
// form, so equal points compare equal.
class TreePoint {
 public:
  TreePoint() = default;
  static TreePoint at_vertex(VertexId v);
  static TreePoint on_edge(const GeometricTree& tree, EdgeId e, const Rational& t);
  // Unchecked; requires 0 < t < 1.
  static TreePoint interior(EdgeId e, const Rational& t);

  bool is_vertex() const { return vertex_ >= 0; }
  VertexId vertex() const { return vertex_; }
  EdgeId edge() const { return edge_; }
  const Rational& param() const { return t_; }

  bool operator==(const TreePoint& o) const {
    return vertex_ == o.vertex_ && edge_ == o.edge_ && (is_vertex() || t_ == o.t_);
  }
  bool operator!=(const TreePoint& o) const { return !(*this == o); }
  // Total order: vertices first (by id), then interior points by (edge, t).
  bool operator<(const TreePoint& o) const;

 private:
  VertexId vertex_ = -1;
  EdgeId edge_ = -1;
  Rational t_;
};

std::string describe(const GeometricTree& tree, const TreePoint& p);

Rational distance(const GeometricTree& tree, const TreePoint& p, const TreePoint& q);

// Portion of one edge traversed by an arc, from parameter t0 to t1.
struct ArcSegment {
  EdgeId edge = -1;
  Rational t0;
  Rational t1;
};

// The unique embedded path between two points, oriented from start to end and
// parameterized by arc length. A degenerate arc has start == end and no
// segments.
class Arc {
 public:
  static Arc between(const GeometricTree& tree, const TreePoint& a, const TreePoint& b);

  const TreePoint& start() const { return start_; }
  const TreePoint& end() const { return end_; }
  const std::vector<ArcSegment>& segments() const { return segments_; }
  const Rational& length() const { return length_; }
  bool degenerate() const { return segments_.empty(); }

  TreePoint point_at(const GeometricTree& tree, const Rational& s) const;
  // Arc-length coordinate of p, if p lies on the arc.
  std::optional<Rational> locate(const GeometricTree& tree, const TreePoint& p) const;
  // Arc-length coordinates of every tree vertex on the arc, ascending.
  std::vector<Rational> vertex_positions(const GeometricTree& tree) const;
  Arc reversed() const;
  Arc sub(const GeometricTree& tree, const Rational& s0, const Rational& s1) const;

 private:
  TreePoint start_;
  TreePoint end_;
  std::vector<ArcSegment> segments_;
  std::vector<Rational> seg_lengths_;
  Rational length_;
};

struct EdgeInterval {
  EdgeId edge = -1;
  Rational lo;
  Rational hi;
  bool operator==(const EdgeInterval& o) const { return edge == o.edge && lo == o.lo && hi == o.hi; }
};

// Closed connected subset of a geometric tree: the set of vertices it contains
// plus, for each edge whose open interior it meets, the closed parameter
// interval of that intersection. Connectedness is verified on construction.
// Canonical: intervals that only touch an endpoint are folded into the vertex
// set, so set-equal subsets compare equal.
class TreeSubset {
 public:
  TreeSubset() = default;  // empty set

  static TreeSubset point(const GeometricTree& tree, const TreePoint& p);
  static TreeSubset whole(const GeometricTree& tree);
  static TreeSubset of_arc(const GeometricTree& tree, const Arc& arc);
  // General constructor; overlapping intervals on one edge are merged.
  // Throws InvalidInput if the result is not connected.
  static TreeSubset from_parts(const GeometricTree& tree, std::vector<VertexId> vertices,
                               std::vector<EdgeInterval> intervals);

  bool empty() const { return vertices_.empty() && intervals_.empty(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeInterval>& intervals() const { return intervals_; }
  const EdgeInterval* interval_on(EdgeId e) const;

  bool contains(const TreePoint& p) const;
  TreePoint any_point() const;
  // Vertices and interval endpoints; the set's extreme points are among them.
  std::vector<TreePoint> boundary_candidates(const GeometricTree& tree) const;
  Rational total_length(const GeometricTree& tree) const;

  bool operator==(const TreeSubset& o) const { return vertices_ == o.vertices_ && intervals_ == o.intervals_; }
  bool operator!=(const TreeSubset& o) const { return !(*this == o); }

 private:
  std::vector<VertexId> vertices_;       // sorted
  std::vector<EdgeInterval> intervals_;  // sorted by edge, one per edge
};

std::string describe(const GeometricTree& tree, const TreeSubset& s);

bool intersects(const TreeSubset& a, const TreeSubset& b);
inline bool subsets_disjoint(const TreeSubset& a, const TreeSubset& b) { return !intersects(a, b); }
bool is_subset(const TreeSubset& inner, const TreeSubset& outer);
// Intersection of two connected subsets (connected or empty).
TreeSubset intersection(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b);
// Union; throws InvalidInput unless the union is connected.
TreeSubset unite(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b);

// Connected components of a union of vertices and closed edge intervals,
// ordered by their least point.
std::vector<TreeSubset> connected_components(const GeometricTree& tree, const std::vector<VertexId>& vertices,
                                             const std::vector<EdgeInterval>& intervals);

// Arc-length range [s0, s1] of the points of `arc` lying in `s`, if any.
std::optional<std::pair<Rational, Rational>> arc_overlap(const GeometricTree& tree, const Arc& arc,
                                                         const TreeSubset& s);

// Bridge from A to B: starts in A, ends in B, and meets them only at its
// endpoints. Degenerate (a single point of A ∩ B) when they intersect.
Arc shortest_path_arc(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b);
TreeSubset shortest_path(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b);

TreeSubset convex_hull(const GeometricTree& tree, std::span<const TreeSubset> members);

TreePoint project(const GeometricTree& tree, const TreePoint& p, const TreeSubset& a);
Rational distance(const GeometricTree& tree, const TreePoint& p, const TreeSubset& a);
Rational diameter(const GeometricTree& tree, const TreeSubset& a);

// Uniform subdivision: every edge split into `pieces` equal edges. New vertex
// names are "<u>~<v>#k".
class Subdivision {
 public:
  Subdivision(const GeometricTree& base, int pieces);

  const GeometricTree& tree() const { return refined_; }
  int pieces() const { return pieces_; }
  TreePoint map_point(const TreePoint& p) const;
  TreeSubset map_subset(const TreeSubset& s) const;

 private:
  int pieces_;
  GeometricTree refined_;
  // interior vertex ids of each base edge, ordered from u to v
  std::vector<std::vector<VertexId>> interior_;
  // refined edge ids of each base edge, ordered from u to v
  std::vector<std::vector<EdgeId>> chain_;
};

// Named shapes used throughout tests, tools and benchmarks.
GeometricTree star_tree(int arms, const Rational& arm_length = 1);
GeometricTree path_tree(int edges, const Rational& edge_length = 1);
// Two degree-3 vertices joined by an edge, four leaves.
GeometricTree h_tree(const Rational& edge_length = 1);

}  // namespace fibertree
