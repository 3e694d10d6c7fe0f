#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fibertree/merge_tree.hpp"

namespace fibertree {

// Points x_1..x_n on a tree, x_i attached to leaf label i of a merge tree.
class Configuration {
 public:
  Configuration(std::shared_ptr<const GeometricTree> tree, std::shared_ptr<const CellularMergeTree> merge_tree,
                std::vector<TreePoint> points);

  const GeometricTree& tree() const { return *tree_; }
  const CellularMergeTree& merge_tree() const { return *merge_tree_; }
  const std::shared_ptr<const GeometricTree>& tree_ptr() const { return tree_; }
  const std::shared_ptr<const CellularMergeTree>& merge_tree_ptr() const { return merge_tree_; }
  const std::vector<TreePoint>& points() const { return points_; }
  const TreePoint& point(int i) const { return points_.at(static_cast<size_t>(i)); }
  size_t size() const { return points_.size(); }

  Configuration with_points(std::vector<TreePoint> points) const;
  bool operator==(const Configuration& o) const { return points_ == o.points_; }

 private:
  std::shared_ptr<const GeometricTree> tree_;
  std::shared_ptr<const CellularMergeTree> merge_tree_;
  std::vector<TreePoint> points_;
};

// Convex hull of the points whose leaves lie below node v.
TreeSubset node_hull(const Configuration& x, int v);
// Hulls of every node, indexed by node id.
std::vector<TreeSubset> all_node_hulls(const Configuration& x);

struct Membership {
  bool member = true;
  std::optional<std::pair<int, int>> witness;  // incomparable nodes whose hulls meet
};

// Hulls of incomparable nodes must be disjoint. Duplicate points throw.
Membership is_member(const Configuration& x);

// Left/right children of every internal node, induced by the order of the
// points along an oriented arc. Indexed by node id; leaves hold (-1, -1).
struct ChiralStructure {
  std::vector<std::pair<int, int>> children;
  bool operator==(const ChiralStructure& o) const { return children == o.children; }
  bool operator!=(const ChiralStructure& o) const { return !(*this == o); }
};

// Leaf labels sorted by position along the arc.
std::vector<int> arc_order(const Configuration& x, const Arc& arc);
ChiralStructure chiral_structure(const Configuration& x, const Arc& arc);

// One point travels along an embedded arc; the rest stay put.
struct PointMove {
  int index = 0;
  Arc route;
};

// Every point lies on `track` and moves linearly in arc coordinate from
// `from[i]` to `to[i]` (stationary points have from == to).
struct LineMove {
  Arc track;
  std::vector<Rational> from;
  std::vector<Rational> to;
};

using Move = std::variant<PointMove, LineMove>;

class ConfigPath {
 public:
  explicit ConfigPath(Configuration start);

  const Configuration& start() const { return start_; }
  const Configuration& end() const { return end_; }
  const std::vector<Move>& moves() const { return moves_; }
  size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }

  // Throws InternalError if the move does not start where the path ends.
  void append(Move move);
  void append(const ConfigPath& tail);
  ConfigPath reversed() const;

 private:
  Configuration start_;
  Configuration end_;
  std::vector<Move> moves_;
};

// Configuration reached after applying `move` to `x`.
Configuration apply_move(const Configuration& x, const Move& move);
// Position of every point at time tau in [0,1] of `move`.
Configuration configuration_at(const Configuration& x, const Move& move, const Rational& tau);

// Times in [0,1] at which the combinatorics of a move can change, plus the
// midpoints between consecutive events.
std::vector<Rational> audit_times(const Configuration& x, const Move& move);
// Every configuration the audit visits, in order.
std::vector<Configuration> waypoints(const ConfigPath& path);

struct AuditReport {
  bool ok = true;
  size_t checked = 0;
  std::string failure;
};

AuditReport audit_path(const ConfigPath& path);

// Gathers every point into the interior of one edge (the given one, or a
// default). Returns the path and the edge.
std::pair<ConfigPath, EdgeId> gather_to_edge(const Configuration& x, std::optional<EdgeId> target = std::nullopt);

// Single line move along `arc` taking x to y; both must lie on the arc in
// the same order.
ConfigPath line_travel(const Configuration& x, const Configuration& y, const Arc& arc);

// x lies inside edge e1, whose endpoint b has degree >= 3. Reorders the
// points inside e1 until their chirality along `orientation` (an arc
// covering e1) equals `target`.
ConfigPath star_reconfigure(const Configuration& x, EdgeId e1, VertexId b, const Arc& orientation,
                            const ChiralStructure& target);

// Path from x to y inside the configuration space. Throws NoPathError when
// the tree has no branch point and the orders along it differ.
ConfigPath connect(const Configuration& x, const Configuration& y);

// Move budget enforced by connect.
size_t move_budget(size_t points);

}  // namespace fibertree
