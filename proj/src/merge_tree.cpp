#include "fibertree/merge_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fibertree/errors.hpp"

namespace fibertree {

CellularMergeTree::CellularMergeTree(std::vector<MergeNode> nodes, std::vector<int> leaf_order)
    : nodes_(std::move(nodes)) {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) throw InvalidInput("merge tree needs at least one node");
  std::set<std::string> names;
  for (const auto& node : nodes_) {
    if (node.name.empty()) throw InvalidInput("merge tree node without a name");
    if (!names.insert(node.name).second) throw InvalidInput("duplicate merge tree node '" + node.name + "'");
  }
  std::vector<std::vector<int>> derived(n);
  for (int i = 0; i < n; ++i) {
    int p = nodes_[i].parent;
    if (p == -1) {
      if (root_ != -1) throw InvalidInput("merge tree has more than one root");
      root_ = i;
      continue;
    }
    if (p < 0 || p >= n || p == i) throw InvalidInput("invalid parent of '" + nodes_[i].name + "'");
    if (!(nodes_[p].height > nodes_[i].height)) {
      throw InvalidInput("parent '" + nodes_[p].name + "' is not strictly higher than '" + nodes_[i].name + "'");
    }
    derived[p].push_back(i);
  }
  if (root_ == -1) throw InvalidInput("merge tree has no root");
  for (int i = 0; i < n; ++i) {
    auto given = nodes_[i].children;
    std::sort(given.begin(), given.end());
    if (given != derived[i]) nodes_[i].children = derived[i];
  }
  // heights increase strictly toward the root, so parent chains cannot cycle
  depth_.assign(n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes_[a].height > nodes_[b].height; });
  for (int v : order) {
    if (nodes_[v].parent >= 0) depth_[v] = depth_[nodes_[v].parent] + 1;
  }

  label_.assign(n, -1);
  if (leaf_order.empty()) {
    for (int i = 0; i < n; ++i) {
      if (nodes_[i].children.empty()) leaf_order.push_back(i);
    }
  }
  for (int id : leaf_order) {
    if (id < 0 || id >= n || !nodes_[id].children.empty()) throw InvalidInput("leaf order names a non-leaf");
    if (label_[id] != -1) throw InvalidInput("leaf order repeats a leaf");
    label_[id] = static_cast<int>(leaves_.size());
    leaves_.push_back(id);
  }
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].children.empty() && label_[i] == -1) throw InvalidInput("leaf order misses a leaf");
    if (!nodes_[i].children.empty()) internal_.push_back(i);
  }
  std::stable_sort(internal_.begin(), internal_.end(),
                   [&](int a, int b) { return nodes_[a].height < nodes_[b].height; });
}

bool CellularMergeTree::is_ancestor(int b, int a) const {
  while (a != -1 && depth_[a] > depth_[b]) a = nodes_[a].parent;
  return a == b;
}

int CellularMergeTree::lca(int a, int b) const {
  while (depth_[a] > depth_[b]) a = nodes_[a].parent;
  while (depth_[b] > depth_[a]) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

std::vector<int> CellularMergeTree::descendant_leaves(int v) const {
  std::vector<int> out;
  std::vector<int> stack{v};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (nodes_[x].children.empty()) out.push_back(label_[x]);
    for (int c : nodes_[x].children) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> CellularMergeTree::find(std::string_view name) const {
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int MergeTreeBuilder::leaf(const Rational& height, std::string name) {
  ++leaves_made_;
  if (name.empty()) name = "l" + std::to_string(leaves_made_);
  nodes_.push_back({std::move(name), height, -1, {}});
  return static_cast<int>(nodes_.size()) - 1;
}

int MergeTreeBuilder::merge(const Rational& height, std::vector<int> children, std::string name) {
  ++merges_made_;
  if (name.empty()) name = "v" + std::to_string(merges_made_);
  int id = static_cast<int>(nodes_.size());
  for (int c : children) {
    if (c < 0 || c >= id) throw InvalidInput("merge of an unknown node");
    if (nodes_[c].parent != -1) throw InvalidInput("node merged twice");
    nodes_[c].parent = id;
  }
  nodes_.push_back({std::move(name), height, -1, std::move(children)});
  return id;
}

CellularMergeTree MergeTreeBuilder::build() const { return CellularMergeTree(nodes_); }

CellularMergeTree standardize(const CellularMergeTree& t) {
  std::vector<MergeNode> nodes = t.nodes();
  std::vector<int> leaves = t.leaves();
  std::stable_sort(leaves.begin(), leaves.end(),
                   [&](int a, int b) { return nodes[a].height < nodes[b].height; });
  for (size_t k = 0; k < leaves.size(); ++k) nodes[leaves[k]].name = "l" + std::to_string(k + 1);
  const auto& internal = t.internal_nodes();
  for (size_t k = 0; k < internal.size(); ++k) nodes[internal[k]].name = "v" + std::to_string(k + 1);
  return CellularMergeTree(std::move(nodes), std::move(leaves));
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(b)] = find(a); }
};

}  // namespace

MergeTreeResult compute_merge_tree(const PLFunction& f) {
  KnotGraph g = build_knot_graph(f);
  const size_t n = g.points.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.values[a] < g.values[b]; });

  Dsu dsu(n);
  std::vector<bool> active(n, false);
  std::vector<int> top(n, -1);  // merge-tree node of a component, at its DSU root
  std::vector<MergeNode> nodes;
  std::vector<int> leaf_knot;  // by node id, a knot of the leaf's plateau (-1 for internal)
  std::vector<std::vector<TreePoint>> merge_points_by_node;

  for (size_t start = 0; start < n;) {
    size_t stop = start;
    const Rational h = g.values[order[start]];
    while (stop < n && g.values[order[stop]] == h) ++stop;
    for (size_t i = start; i < stop; ++i) active[order[i]] = true;
    // join the new knots among themselves
    for (size_t i = start; i < stop; ++i) {
      int k = order[i];
      for (int s : g.touching[k]) {
        int other = g.segments[s].a == k ? g.segments[s].b : g.segments[s].a;
        if (active[other] && g.values[other] == h) dsu.unite(k, other);
      }
    }
    // old components adjacent to each new group
    std::map<int, std::set<int>> old_roots;
    std::map<int, std::vector<int>> group_knots;
    for (size_t i = start; i < stop; ++i) {
      int k = order[i];
      int r = dsu.find(k);
      group_knots[r].push_back(k);
      auto& olds = old_roots[r];
      for (int s : g.touching[k]) {
        int other = g.segments[s].a == k ? g.segments[s].b : g.segments[s].a;
        if (active[other] && g.values[other] < h) olds.insert(dsu.find(other));
      }
    }
    // group components sharing an old component belong to one new component
    std::map<int, int> group_of_old;
    for (auto& [r, olds] : old_roots) {
      for (int o : olds) {
        auto [it, fresh] = group_of_old.emplace(o, r);
        if (!fresh) dsu.unite(it->second, r);
      }
    }
    std::map<int, std::pair<std::vector<int>, std::set<int>>> clusters;
    for (auto& [r, knots] : group_knots) {
      auto& c = clusters[dsu.find(r)];
      c.first.insert(c.first.end(), knots.begin(), knots.end());
      c.second.insert(old_roots[r].begin(), old_roots[r].end());
    }
    for (auto& [r, cluster] : clusters) {
      auto& [knots, olds] = cluster;
      std::sort(knots.begin(), knots.end());
      int node;
      if (olds.empty()) {
        node = static_cast<int>(nodes.size());
        nodes.push_back({"", h, -1, {}});
        leaf_knot.push_back(knots.front());
        merge_points_by_node.emplace_back();
      } else if (olds.size() == 1) {
        node = top[*olds.begin()];
      } else {
        node = static_cast<int>(nodes.size());
        std::vector<int> children;
        for (int o : olds) children.push_back(top[o]);
        std::sort(children.begin(), children.end());
        for (int c : children) nodes[c].parent = node;
        nodes.push_back({"", h, -1, children});
        leaf_knot.push_back(-1);
        std::vector<TreePoint> pts;
        for (int k : knots) pts.push_back(g.points[k]);
        std::sort(pts.begin(), pts.end());
        merge_points_by_node.push_back(std::move(pts));
      }
      for (int o : olds) dsu.unite(r, o);
      top[dsu.find(r)] = node;
    }
    start = stop;
  }

  // leaf labels follow local_minima order: (value, least point)
  auto minima = local_minima(f);
  std::vector<int> leaf_order(minima.size(), -1);
  for (size_t id = 0; id < nodes.size(); ++id) {
    if (leaf_knot[id] < 0) continue;
    const TreePoint& p = g.points[leaf_knot[id]];
    for (size_t m = 0; m < minima.size(); ++m) {
      if (minima[m].value == nodes[id].height && minima[m].region.contains(p)) {
        leaf_order[m] = static_cast<int>(id);
        break;
      }
    }
  }
  for (int id : leaf_order) {
    if (id < 0) throw InternalError("merge tree leaves and local minima disagree");
  }
  for (size_t m = 0; m < leaf_order.size(); ++m) nodes[leaf_order[m]].name = "l" + std::to_string(m + 1);
  int v = 0;
  for (auto& node : nodes) {
    if (!node.children.empty()) node.name = "v" + std::to_string(++v);
  }
  CellularMergeTree tree(std::move(nodes), leaf_order);
  MergeTreeResult out{std::move(tree), {}, {}};
  for (auto& m : minima) out.leaf_regions.push_back(std::move(m.region));
  for (int id : out.tree.internal_nodes()) out.merge_points.push_back(merge_points_by_node[id]);
  return out;
}

InducedMatrix induced_matrix(const CellularMergeTree& t, const std::vector<int>& labels) {
  std::vector<int> lab = labels;
  if (lab.empty()) {
    lab.resize(t.leaf_count());
    std::iota(lab.begin(), lab.end(), 0);
  }
  for (int l : lab) {
    if (l < 0 || static_cast<size_t>(l) >= t.leaf_count()) throw InvalidInput("label index out of range");
  }
  InducedMatrix m;
  m.entries.assign(lab.size(), std::vector<Rational>(lab.size()));
  for (size_t i = 0; i < lab.size(); ++i) {
    for (size_t j = i; j < lab.size(); ++j) {
      int a = t.leaves()[lab[i]];
      int b = t.leaves()[lab[j]];
      m.entries[i][j] = m.entries[j][i] = t.node(t.lca(a, b)).height;
    }
  }
  return m;
}

namespace {

std::string encode(const CellularMergeTree& t, int v) {
  const MergeNode& node = t.node(v);
  if (node.children.size() == 1) return encode(t, node.children.front());
  if (node.children.empty()) return "(" + to_string(node.height) + ")";
  std::vector<std::string> parts;
  for (int c : node.children) parts.push_back(encode(t, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "[" + to_string(node.height) + "|";
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out + "]";
}

}  // namespace

std::string canonical_form(const CellularMergeTree& t) { return encode(t, t.root()); }

bool is_isomorphic(const CellularMergeTree& a, const CellularMergeTree& b) {
  return canonical_form(a) == canonical_form(b);
}

bool is_generic(const CellularMergeTree& t) {
  std::set<Rational> heights;
  for (const auto& node : t.nodes()) {
    if (!node.children.empty() && node.children.size() != 2) return false;
    if (!heights.insert(node.height).second) return false;
  }
  return true;
}

namespace {

template <typename Reduce>
Rational entry_deviation(const CellularMergeTree& t1, const CellularMergeTree& t2, const std::vector<int>& labels1,
                         const std::vector<int>& labels2, Reduce reduce) {
  if (labels1.size() != labels2.size()) throw InvalidInput("labellings have different sizes");
  InducedMatrix m1 = induced_matrix(t1, labels1);
  InducedMatrix m2 = induced_matrix(t2, labels2);
  if (m1.size() != m2.size()) throw InvalidInput("matrices have different sizes");
  std::optional<Rational> acc;
  for (size_t i = 0; i < m1.size(); ++i) {
    for (size_t j = 0; j < m1.size(); ++j) {
      Rational d = abs(m1.entries[i][j] - m2.entries[i][j]);
      acc = acc ? reduce(*acc, d) : d;
    }
  }
  return acc.value_or(Rational(0));
}

}  // namespace

Rational matrix_distance(const CellularMergeTree& t1, const CellularMergeTree& t2, const std::vector<int>& labels1,
                         const std::vector<int>& labels2) {
  return entry_deviation(t1, t2, labels1, labels2,
                         [](const Rational& a, const Rational& b) { return Rational(fibertree::max(a, b)); });
}

Rational matrix_entry_min_deviation(const CellularMergeTree& t1, const CellularMergeTree& t2,
                                    const std::vector<int>& labels1, const std::vector<int>& labels2) {
  return entry_deviation(t1, t2, labels1, labels2,
                         [](const Rational& a, const Rational& b) { return Rational(fibertree::min(a, b)); });
}

std::vector<std::vector<int>> all_surjections(int size, int targets) {
  std::vector<std::vector<int>> out;
  if (size < targets || targets <= 0) return out;
  std::vector<int> cur(size, 0);
  while (true) {
    std::vector<bool> hit(targets, false);
    for (int x : cur) hit[x] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[i] == targets - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<std::vector<int>> sorted_surjections(int size, int targets) {
  std::vector<std::vector<int>> out;
  for (auto& s : all_surjections(size, targets)) {
    if (std::is_sorted(s.begin(), s.end())) out.push_back(std::move(s));
  }
  return out;
}

Rational matrix_distance_min_over_labelings(const CellularMergeTree& t1, const CellularMergeTree& t2, int bound_n) {
  const int n1 = static_cast<int>(t1.leaf_count());
  const int n2 = static_cast<int>(t2.leaf_count());
  const int lo = std::max(n1, n2);
  if (bound_n < lo) throw InvalidInput("label bound smaller than the leaf counts");
  std::optional<Rational> best;
  for (int size = lo; size <= bound_n; ++size) {
    auto firsts = sorted_surjections(size, n1);
    auto seconds = all_surjections(size, n2);
    for (const auto& a : firsts) {
      for (const auto& b : seconds) {
        Rational d = matrix_distance(t1, t2, a, b);
        if (!best || d < *best) best = d;
      }
    }
  }
  return *best;
}

}  // namespace fibertree
