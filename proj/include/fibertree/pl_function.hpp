#pragma once

#include <memory>
#include <vector>

#include "fibertree/tree_geometry.hpp"

namespace fibertree {

struct Knot {
  Rational t;
  Rational value;
  bool operator==(const Knot& o) const { return t == o.t && value == o.value; }
};

// Continuous piecewise-linear function on a geometric tree: one value per
// vertex plus, per edge, breakpoints strictly inside (0,1) in increasing t.
class PLFunction {
 public:
  PLFunction(std::shared_ptr<const GeometricTree> tree, std::vector<Rational> vertex_values,
             std::vector<std::vector<Knot>> breakpoints);
  // No breakpoints: linear on every edge.
  PLFunction(std::shared_ptr<const GeometricTree> tree, std::vector<Rational> vertex_values);

  const GeometricTree& tree() const { return *tree_; }
  const std::shared_ptr<const GeometricTree>& tree_ptr() const { return tree_; }
  const Rational& vertex_value(VertexId v) const { return vertex_values_.at(static_cast<size_t>(v)); }
  const std::vector<Rational>& vertex_values() const { return vertex_values_; }
  const std::vector<Knot>& breakpoints(EdgeId e) const { return breakpoints_.at(static_cast<size_t>(e)); }

  // Breakpoints with the two endpoint knots (t = 0 and t = 1) added.
  std::vector<Knot> edge_profile(EdgeId e) const;
  Rational evaluate(const TreePoint& p) const;
  Rational evaluate_on_edge(EdgeId e, const Rational& t) const;
  // Drops breakpoints where the function does not change slope.
  PLFunction simplified() const;

  bool operator==(const PLFunction& o) const;

 private:
  std::shared_ptr<const GeometricTree> tree_;
  std::vector<Rational> vertex_values_;
  std::vector<std::vector<Knot>> breakpoints_;
};

// The function as a graph on its knots: tree vertices keep their ids, edge
// breakpoints follow. Every segment carries a linear piece.
struct KnotGraph {
  struct Segment {
    int a = 0;
    int b = 0;
    EdgeId edge = -1;
    Rational ta;  // ta < tb
    Rational tb;
  };
  std::vector<TreePoint> points;
  std::vector<Rational> values;
  std::vector<Segment> segments;
  std::vector<std::vector<int>> touching;  // segment ids per knot
};

KnotGraph build_knot_graph(const PLFunction& f);

struct LocalMinimum {
  TreeSubset region;
  Rational value;
};

// All local minima (plateaus included), ordered by value then position.
std::vector<LocalMinimum> local_minima(const PLFunction& f);

struct PathMaximum {
  Rational value;
  std::vector<TreeSubset> regions;  // maximal connected subsets attaining it
};

PathMaximum max_on_path(const PLFunction& f, const TreeSubset& path);

// Components of the closed sublevel set f^-1((-inf, t]).
std::vector<TreeSubset> sublevel_components(const PLFunction& f, const Rational& t);

// Exact sup norm of f - g; both must live on equal trees.
Rational sup_distance(const PLFunction& f, const PLFunction& g);
PLFunction add(const PLFunction& f, const PLFunction& g);

}  // namespace fibertree
