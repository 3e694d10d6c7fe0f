#include "fibertree/generators.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fibertree/errors.hpp"

namespace fibertree {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Rational random_rational(Rng& rng, long lo, long hi, long den) {
  Rational q(uniform(rng, lo * den, hi * den), den);
  q.canonicalize();
  return q;
}

GeometricTree random_tree(Rng& rng, int vertices) {
  if (vertices < 1) throw InvalidInput("tree needs a vertex");
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (int k = 0; k < vertices; ++k) {
    names.push_back("n" + std::to_string(k));
    if (k > 0) {
      Rational len(uniform(rng, 1, 4), 2);
      len.canonicalize();
      edges.push_back({static_cast<VertexId>(uniform(rng, 0, k - 1)), k, len});
    }
  }
  return GeometricTree(std::move(names), std::move(edges));
}

GeometricTree random_branching_tree(Rng& rng, int vertices) {
  if (vertices < 4) throw InvalidInput("a branch point needs at least four vertices");
  while (true) {
    GeometricTree t = random_tree(rng, vertices);
    if (t.has_branch_point()) return t;
  }
}

PLFunction random_pl_function(Rng& rng, std::shared_ptr<const GeometricTree> tree, int max_breakpoints) {
  std::vector<Rational> values;
  for (size_t v = 0; v < tree->vertex_count(); ++v) values.push_back(random_rational(rng, 0, 8, 4));
  std::vector<std::vector<Knot>> bps(tree->edge_count());
  for (auto& list : bps) {
    int count = static_cast<int>(uniform(rng, 0, max_breakpoints));
    std::set<Rational> ts;
    while (static_cast<int>(ts.size()) < count) ts.insert(Rational(uniform(rng, 1, 7), 8));
    for (const Rational& t : ts) {
      Rational tc = t;
      tc.canonicalize();
      list.push_back({tc, random_rational(rng, 0, 8, 4)});
    }
  }
  return PLFunction(std::move(tree), std::move(values), std::move(bps));
}

Barcode random_generic_barcode(Rng& rng, int bars) {
  if (bars < 1) throw InvalidInput("barcode needs a bar");
  // 2*bars - 1 distinct values; the smallest is the infinite bar's birth
  std::set<long> picks;
  while (static_cast<int>(picks.size()) < 2 * bars - 1) picks.insert(uniform(rng, 0, 8 * bars));
  std::vector<long> vals(picks.begin(), picks.end());
  std::vector<Bar> out{{Rational(vals[0]), std::nullopt}};
  std::vector<long> rest(vals.begin() + 1, vals.end());
  std::shuffle(rest.begin(), rest.end(), rng);
  for (size_t k = 0; k + 1 < rest.size(); k += 2) {
    long a = std::min(rest[k], rest[k + 1]);
    long b = std::max(rest[k], rest[k + 1]);
    out.push_back({Rational(a), Rational(b)});
  }
  return Barcode(std::move(out));
}

namespace {

TreePoint random_point(Rng& rng, const GeometricTree& tree) {
  if (tree.edge_count() == 0) return TreePoint::at_vertex(0);
  EdgeId e = static_cast<EdgeId>(uniform(rng, 0, static_cast<long>(tree.edge_count()) - 1));
  return TreePoint::on_edge(tree, e, Rational(uniform(rng, 0, 16), 16));
}

}  // namespace

std::vector<TreePoint> random_configuration(Rng& rng, const GeometricTree& tree, const CellularMergeTree& t) {
  const size_t n = t.leaf_count();
  auto shared_t = std::make_shared<const CellularMergeTree>(t);
  auto shared_tree = std::make_shared<const GeometricTree>(tree);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<TreePoint> pts;
    for (size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, tree));
    std::vector<TreePoint> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    if (is_member(Configuration(shared_tree, shared_t, pts)).member) return pts;
  }
  // constructive: leaves in a random depth-first order along a random arc
  std::vector<int> order;
  std::function<void(int)> walk = [&](int v) {
    if (t.is_leaf(v)) order.push_back(t.leaf_label(v));
    auto ch = t.node(v).children;
    std::shuffle(ch.begin(), ch.end(), rng);
    for (int c : ch) walk(c);
  };
  walk(t.root());
  TreePoint a = random_point(rng, tree);
  TreePoint b = random_point(rng, tree);
  Arc arc = Arc::between(tree, a, b);
  if (arc.length() == 0) arc = Arc::between(tree, TreePoint::at_vertex(tree.edge(0).u), TreePoint::at_vertex(tree.edge(0).v));
  std::set<Rational> spots;
  while (spots.size() < n) spots.insert(random_rational(rng, 0, 1, 64) * arc.length());
  std::vector<TreePoint> pts(n);
  size_t k = 0;
  for (const Rational& s : spots) pts[order[k++]] = arc.point_at(tree, s);
  return pts;
}

}  // namespace fibertree
