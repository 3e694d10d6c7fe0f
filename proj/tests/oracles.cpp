#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace oracle {

using fibertree::Bar;
using fibertree::MergeNode;

std::vector<std::vector<Rational>> point_distances(const GeometricTree& tree, const std::vector<TreePoint>& pts) {
  const int nv = static_cast<int>(tree.vertex_count());
  // refined nodes: tree vertices, then one node per distinct interior point
  std::vector<std::vector<std::pair<Rational, int>>> on_edge(tree.edge_count());
  std::vector<int> node_of(pts.size());
  int next = nv;
  for (size_t i = 0; i < pts.size(); ++i) {
    const TreePoint& p = pts[i];
    if (p.is_vertex()) {
      node_of[i] = p.vertex();
      continue;
    }
    auto& list = on_edge[static_cast<size_t>(p.edge())];
    auto it = std::find_if(list.begin(), list.end(), [&](const auto& e) { return e.first == p.param(); });
    if (it != list.end()) {
      node_of[i] = it->second;
    } else {
      list.push_back({p.param(), next});
      node_of[i] = next++;
    }
  }
  std::vector<std::vector<std::pair<int, Rational>>> adj(static_cast<size_t>(next));
  for (size_t e = 0; e < tree.edge_count(); ++e) {
    const auto& ed = tree.edge(static_cast<int>(e));
    auto chain = on_edge[e];
    chain.push_back({0, ed.u});
    chain.push_back({1, ed.v});
    std::sort(chain.begin(), chain.end());
    for (size_t k = 0; k + 1 < chain.size(); ++k) {
      Rational w = ed.length * (chain[k + 1].first - chain[k].first);
      adj[static_cast<size_t>(chain[k].second)].push_back({chain[k + 1].second, w});
      adj[static_cast<size_t>(chain[k + 1].second)].push_back({chain[k].second, w});
    }
  }
  std::vector<std::vector<Rational>> out(pts.size(), std::vector<Rational>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) {
    // the refined graph is a tree, so a depth-first walk gives distances
    std::vector<Rational> dist(static_cast<size_t>(next));
    std::vector<bool> seen(static_cast<size_t>(next), false);
    std::vector<int> stack{node_of[i]};
    seen[static_cast<size_t>(node_of[i])] = true;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (const auto& [b, w] : adj[static_cast<size_t>(a)]) {
        if (seen[static_cast<size_t>(b)]) continue;
        seen[static_cast<size_t>(b)] = true;
        dist[static_cast<size_t>(b)] = dist[static_cast<size_t>(a)] + w;
        stack.push_back(b);
      }
    }
    for (size_t j = 0; j < pts.size(); ++j) out[i][j] = dist[static_cast<size_t>(node_of[j])];
  }
  return out;
}

bool between(const GeometricTree& tree, const TreePoint& a, const TreePoint& b, const TreePoint& q) {
  auto d = point_distances(tree, {a, b, q});
  return d[0][2] + d[2][1] == d[0][1];
}

namespace {

struct Live {
  int node;
  Rational birth;
};

void grow(const std::vector<std::pair<Rational, bool>>& events, size_t at, std::vector<MergeNode>& nodes,
          std::vector<Live>& live, std::vector<Bar>& bars, std::vector<int>& leaf_ids, int& merges,
          std::vector<GaugedTree>& out) {
  if (at == events.size()) {
    if (live.size() != 1) return;
    std::vector<Bar> all = bars;
    all.push_back({live[0].birth, std::nullopt});
    out.push_back({CellularMergeTree(nodes, leaf_ids), Barcode(std::move(all))});
    return;
  }
  const auto& [h, is_birth] = events[at];
  if (is_birth) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({"l" + std::to_string(leaf_ids.size() + 1), h, -1, {}});
    leaf_ids.push_back(id);
    live.push_back({id, h});
    grow(events, at + 1, nodes, live, bars, leaf_ids, merges, out);
    live.pop_back();
    leaf_ids.pop_back();
    nodes.pop_back();
    return;
  }
  for (size_t i = 0; i < live.size(); ++i) {
    for (size_t j = i + 1; j < live.size(); ++j) {
      Live a = live[i], b = live[j];
      int id = static_cast<int>(nodes.size());
      nodes.push_back({"v" + std::to_string(++merges), h, -1, {}});
      nodes[static_cast<size_t>(a.node)].parent = id;
      nodes[static_cast<size_t>(b.node)].parent = id;
      const Live& young = a.birth > b.birth ? a : b;
      const Live& old = a.birth > b.birth ? b : a;
      bars.push_back({young.birth, h});
      std::vector<Live> next;
      for (size_t k = 0; k < live.size(); ++k) {
        if (k != i && k != j) next.push_back(live[k]);
      }
      next.push_back({id, old.birth});
      std::swap(live, next);
      grow(events, at + 1, nodes, live, bars, leaf_ids, merges, out);
      std::swap(live, next);
      bars.pop_back();
      nodes[static_cast<size_t>(a.node)].parent = -1;
      nodes[static_cast<size_t>(b.node)].parent = -1;
      nodes.pop_back();
      --merges;
    }
  }
}

}  // namespace

std::vector<GaugedTree> all_gauged_trees(std::vector<Rational> births, std::vector<Rational> deaths) {
  std::vector<std::pair<Rational, bool>> events;
  for (auto& b : births) events.push_back({b, true});
  for (auto& d : deaths) events.push_back({d, false});
  std::sort(events.begin(), events.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<MergeNode> nodes;
  std::vector<Live> live;
  std::vector<Bar> bars;
  std::vector<int> leaf_ids;
  int merges = 0;
  std::vector<GaugedTree> out;
  grow(events, 0, nodes, live, bars, leaf_ids, merges, out);
  return out;
}

std::uint64_t count_by_brute_force(const Barcode& d) {
  std::vector<Rational> births, deaths;
  for (const Bar& b : d.bars()) {
    births.push_back(b.birth);
    if (b.death) deaths.push_back(*b.death);
  }
  std::uint64_t n = 0;
  for (const auto& g : all_gauged_trees(births, deaths)) n += g.barcode == d ? 1 : 0;
  return n;
}

SweepResult sublevel_sweep(const PLFunction& f) {
  const GeometricTree& tree = f.tree();
  std::vector<Rational> value;
  std::vector<TreePoint> where;
  for (size_t v = 0; v < tree.vertex_count(); ++v) {
    value.push_back(f.vertex_value(static_cast<int>(v)));
    where.push_back(TreePoint::at_vertex(static_cast<int>(v)));
  }
  std::vector<std::vector<int>> adj(tree.vertex_count());
  auto link = [&](int a, int b) {
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  };
  for (size_t e = 0; e < tree.edge_count(); ++e) {
    int prev = tree.edge(static_cast<int>(e)).u;
    for (const auto& k : f.breakpoints(static_cast<int>(e))) {
      int id = static_cast<int>(value.size());
      value.push_back(k.value);
      where.push_back(TreePoint::on_edge(tree, static_cast<int>(e), k.t));
      adj.emplace_back();
      link(prev, id);
      prev = id;
    }
    link(prev, tree.edge(static_cast<int>(e)).v);
  }
  const size_t n = value.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    return x;
  };
  std::vector<std::vector<int>> minima_of(n);  // minima owned by a root
  std::vector<bool> active(n, false);
  SweepResult out;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return value[a] < value[b]; });
  auto set_height = [&](int i, int j, const Rational& h) {
    out.merge_heights[static_cast<size_t>(i)][static_cast<size_t>(j)] = h;
    out.merge_heights[static_cast<size_t>(j)][static_cast<size_t>(i)] = h;
  };
  std::vector<std::pair<int, int>> pending;  // (i, j) merged at the current level
  for (size_t lo = 0; lo < n;) {
    size_t hi = lo;
    while (hi < n && value[order[hi]] == value[order[lo]]) ++hi;
    const Rational level = value[order[lo]];
    pending.clear();
    for (size_t k = lo; k < hi; ++k) active[order[k]] = true;
    for (size_t k = lo; k < hi; ++k) {
      int a = static_cast<int>(order[k]);
      for (int b : adj[static_cast<size_t>(a)]) {
        if (!active[static_cast<size_t>(b)]) continue;
        int ra = find(a), rb = find(b);
        if (ra == rb) continue;
        for (int i : minima_of[static_cast<size_t>(ra)]) {
          for (int j : minima_of[static_cast<size_t>(rb)]) pending.push_back({i, j});
        }
        parent[static_cast<size_t>(rb)] = ra;
        auto& dst = minima_of[static_cast<size_t>(ra)];
        auto& src = minima_of[static_cast<size_t>(rb)];
        dst.insert(dst.end(), src.begin(), src.end());
        src.clear();
      }
    }
    // components made only of knots at this level with no older minimum
    for (size_t k = lo; k < hi; ++k) {
      int r = find(static_cast<int>(order[k]));
      if (!minima_of[static_cast<size_t>(r)].empty()) continue;
      int id = static_cast<int>(out.minimum_values.size());
      out.minimum_values.push_back(level);
      out.representatives.push_back(where[order[k]]);
      minima_of[static_cast<size_t>(r)].push_back(id);
      for (auto& row : out.merge_heights) row.emplace_back();
      out.merge_heights.emplace_back(out.minimum_values.size());
      set_height(id, id, level);
    }
    for (auto [i, j] : pending) set_height(i, j, level);
    lo = hi;
  }
  return out;
}

std::vector<int> left_children(const CellularMergeTree& t, const std::vector<Rational>& leaf_positions) {
  const auto& nodes = t.nodes();
  std::vector<int> label(nodes.size(), -1);
  for (size_t k = 0; k < t.leaves().size(); ++k) label[static_cast<size_t>(t.leaves()[k])] = static_cast<int>(k);
  std::function<Rational(int)> first = [&](int v) -> Rational {
    if (nodes[static_cast<size_t>(v)].children.empty()) return leaf_positions[static_cast<size_t>(label[static_cast<size_t>(v)])];
    Rational best = first(nodes[static_cast<size_t>(v)].children.front());
    for (int c : nodes[static_cast<size_t>(v)].children) {
      Rational p = first(c);
      if (p < best) best = p;
    }
    return best;
  };
  std::vector<int> out(nodes.size(), -1);
  for (size_t v = 0; v < nodes.size(); ++v) {
    const auto& ch = nodes[v].children;
    if (ch.empty()) continue;
    int best = ch.front();
    for (int c : ch) {
      if (first(c) < first(best)) best = c;
    }
    out[v] = best;
  }
  return out;
}

}  // namespace oracle
