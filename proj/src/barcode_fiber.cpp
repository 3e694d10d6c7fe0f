#include "fibertree/barcode_fiber.hpp"

#include <algorithm>
#include <functional>

#include "fibertree/errors.hpp"

namespace fibertree {

namespace {

void require_generic_realizable(const Barcode& d) {
  if (d.size() == 0) throw InvalidInput("empty barcode");
  if (!is_generic_barcode(d)) throw InvalidInput("barcode is not generic: endpoints repeat");
  check_realizable(d);
}

bool strictly_contains(const Bar& outer, const Bar& inner) {
  if (!(outer.birth < inner.birth)) return false;
  if (outer.infinite()) return true;
  return !inner.infinite() && *inner.death < *outer.death;
}

std::vector<std::vector<int>> containing_bars(const Barcode& d) {
  const auto& bars = d.bars();
  std::vector<std::vector<int>> out(bars.size());
  for (size_t k = 0; k < bars.size(); ++k) {
    for (size_t p = 0; p < bars.size(); ++p) {
      if (strictly_contains(bars[p], bars[k])) out[k].push_back(static_cast<int>(p));
    }
  }
  return out;
}

}  // namespace

std::uint64_t count_components(const Barcode& d) {
  require_generic_realizable(d);
  auto containing = containing_bars(d);
  std::uint64_t total = 1;
  for (size_t k = 0; k < d.size(); ++k) {
    if (d.bars()[k].infinite()) continue;
    total *= containing[k].size();
  }
  return total;
}

CellularMergeTree merge_tree_for_choice(const Barcode& d, std::uint64_t index) {
  const auto& bars = d.bars();
  auto containing = containing_bars(d);
  std::vector<std::vector<int>> children(bars.size());
  int root = -1;
  for (size_t k = 0; k < bars.size(); ++k) {
    if (bars[k].infinite()) {
      root = static_cast<int>(k);
      continue;
    }
    const auto& options = containing[k];
    children[options[index % options.size()]].push_back(static_cast<int>(k));
    index /= options.size();
  }
  MergeTreeBuilder builder;
  std::function<int(int)> build = [&](int p) {
    int top = builder.leaf(bars[p].birth);
    auto kids = children[p];
    std::sort(kids.begin(), kids.end(), [&](int a, int b) { return *bars[a].death < *bars[b].death; });
    for (int c : kids) {
      int sub = build(c);
      top = builder.merge(*bars[c].death, {top, sub});
    }
    return top;
  };
  build(root);
  return standardize(builder.build());
}

std::vector<CellularMergeTree> enumerate_merge_trees(const Barcode& d) {
  std::uint64_t total = count_components(d);
  std::vector<std::pair<std::string, CellularMergeTree>> keyed;
  for (std::uint64_t i = 0; i < total; ++i) {
    CellularMergeTree t = merge_tree_for_choice(d, i);
    std::string key = canonical_form(t);
    keyed.emplace_back(std::move(key), std::move(t));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CellularMergeTree> out;
  for (auto& [key, t] : keyed) out.push_back(std::move(t));
  return out;
}

FiberCheck verify_fiber_membership(const PLFunction& f, const CellularMergeTree& t) {
  if (!is_generic(t)) return {false, "merge tree is not generic"};
  auto minima = local_minima(f);
  if (minima.size() != t.leaf_count()) {
    return {false, "minima count mismatch: " + std::to_string(minima.size()) + " local minima, " +
                       std::to_string(t.leaf_count()) + " leaves"};
  }
  // leaf heights are distinct, so sorting both sides gives the matching
  std::vector<int> labels(t.leaf_count());
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
  std::sort(labels.begin(), labels.end(), [&](int a, int b) {
    return t.node(t.leaves()[a]).height < t.node(t.leaves()[b]).height;
  });
  std::vector<TreeSubset> region_of(t.leaf_count());
  for (size_t k = 0; k < labels.size(); ++k) {
    const Rational& h = t.node(t.leaves()[labels[k]]).height;
    if (minima[k].value != h) {
      return {false, "minimum value mismatch: found " + to_string(minima[k].value) + ", expected " + to_string(h)};
    }
    region_of[labels[k]] = minima[k].region;
  }
  const GeometricTree& tree = f.tree();
  std::vector<TreeSubset> hulls(t.size());
  for (int leaf : t.leaves()) hulls[leaf] = region_of[t.leaf_label(leaf)];
  for (int v : t.internal_nodes()) {
    const auto& ch = t.node(v).children;
    TreeSubset bridge = shortest_path(tree, hulls[ch[0]], hulls[ch[1]]);
    PathMaximum top = max_on_path(f, bridge);
    if (top.value != t.node(v).height) {
      return {false, "node height mismatch at '" + t.node(v).name + "': path maximum " + to_string(top.value) +
                         ", expected " + to_string(t.node(v).height)};
    }
    if (top.regions.size() != 1) {
      return {false, "maximum not attained on a unique connected subset at '" + t.node(v).name + "'"};
    }
    hulls[v] = convex_hull(tree, std::vector<TreeSubset>{hulls[ch[0]], hulls[ch[1]]});
  }
  return {true, "ok"};
}

std::vector<TreePoint> default_configuration(const GeometricTree& tree, const CellularMergeTree& t) {
  const size_t n = t.leaf_count();
  if (tree.edge_count() == 0) {
    if (n == 1) return {TreePoint::at_vertex(0)};
    throw UnsupportedDomain("a one-vertex tree holds a single point");
  }
  std::vector<int> order;
  std::function<void(int)> walk = [&](int v) {
    if (t.is_leaf(v)) order.push_back(t.leaf_label(v));
    for (int c : t.node(v).children) walk(c);
  };
  walk(t.root());
  std::vector<TreePoint> pts(n);
  for (size_t k = 0; k < n; ++k) {
    pts[order[k]] = TreePoint::on_edge(tree, 0, Rational(static_cast<long>(k + 1), static_cast<long>(n + 1)));
  }
  return pts;
}

namespace {

struct Saddle {
  Arc bridge;
  Rational start_value;
  Rational peak;
  Rational end_value;
};

}  // namespace

PLFunction realize_function(const CellularMergeTree& t, std::shared_ptr<const GeometricTree> tree_ptr,
                            std::optional<std::vector<TreePoint>> points) {
  if (!is_generic(t)) throw InvalidInput("realization needs a generic merge tree");
  const GeometricTree& tree = *tree_ptr;
  std::vector<TreePoint> pts = points ? std::move(*points) : default_configuration(tree, t);
  Configuration z(tree_ptr, std::make_shared<const CellularMergeTree>(t), pts);
  if (!is_member(z).member) throw InvalidInput("configuration violates the merge-tree constraint");
  auto hulls = all_node_hulls(z);

  std::vector<Saddle> saddles;
  auto value_in_hull = [&](const TreePoint& p) -> Rational {
    for (size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] == p) return t.node(t.leaves()[i]).height;
    }
    for (const Saddle& s : saddles) {
      auto pos = s.bridge.locate(tree, p);
      if (!pos) continue;
      Rational half = s.bridge.length() / 2;
      if (*pos <= half) return s.start_value + (s.peak - s.start_value) * *pos / half;
      return s.peak + (s.end_value - s.peak) * (*pos - half) / half;
    }
    throw InternalError("point of the hull lies on no bridge");
  };
  for (int v : t.internal_nodes()) {
    const auto& ch = t.node(v).children;
    Arc bridge = shortest_path_arc(tree, hulls[ch[0]], hulls[ch[1]]);
    if (bridge.degenerate()) throw InternalError("sibling hulls meet");
    Rational a = value_in_hull(bridge.start());
    Rational b = value_in_hull(bridge.end());
    saddles.push_back({std::move(bridge), a, t.node(v).height, b});
  }
  const TreeSubset& hull = hulls[t.root()];
  auto value = [&](const TreePoint& p) -> Rational {
    if (hull.contains(p)) return value_in_hull(p);
    TreePoint q = project(tree, p, hull);
    return value_in_hull(q) + distance(tree, p, q);
  };

  std::vector<std::vector<Rational>> params(tree.edge_count());
  auto mark = [&](const TreePoint& p) {
    if (!p.is_vertex()) params[p.edge()].push_back(p.param());
  };
  for (const TreePoint& p : pts) mark(p);
  for (const Saddle& s : saddles) {
    mark(s.bridge.start());
    mark(s.bridge.end());
    mark(s.bridge.point_at(tree, s.bridge.length() / 2));
  }
  for (const TreePoint& p : hull.boundary_candidates(tree)) mark(p);

  std::vector<Rational> vertex_values;
  for (size_t v = 0; v < tree.vertex_count(); ++v) vertex_values.push_back(value(TreePoint::at_vertex(static_cast<VertexId>(v))));
  std::vector<std::vector<Knot>> bps(tree.edge_count());
  for (size_t e = 0; e < tree.edge_count(); ++e) {
    auto& ts = params[e];
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (const Rational& s : ts) bps[e].push_back({s, value(TreePoint::interior(static_cast<EdgeId>(e), s))});
  }
  return PLFunction(tree_ptr, std::move(vertex_values), std::move(bps)).simplified();
}

bool same_component(const PLFunction& f, const PLFunction& g) {
  if (!(f.tree() == g.tree())) throw InvalidInput("functions live on different trees");
  if (!f.tree().has_branch_point()) {
    throw UnsupportedDomain("the tree is an interval; components there are not decided by merge trees");
  }
  auto tf = compute_merge_tree(f).tree;
  auto tg = compute_merge_tree(g).tree;
  Barcode df = barcode_of(tf);
  Barcode dg = barcode_of(tg);
  if (df != dg) throw InvalidInput("barcodes differ: " + describe(df) + " vs " + describe(dg));
  if (!is_generic_barcode(df)) throw InvalidInput("barcode is not generic");
  return is_isomorphic(tf, tg);
}

long circle_count(const GeometricTree& tree) {
  if (!tree.has_branch_point()) throw UnsupportedDomain("circle count needs a vertex of degree at least 3");
  long total = -1;
  for (size_t v = 0; v < tree.vertex_count(); ++v) {
    long d = tree.degree(static_cast<VertexId>(v));
    total += (d - 1) * (d - 2);
  }
  return total;
}

}  // namespace fibertree
