#include "fibertree/pl_function.hpp"

#include <algorithm>
#include <numeric>

#include "fibertree/errors.hpp"

namespace fibertree {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(b)] = find(a); }
};

Rational interpolate(const Knot& a, const Knot& b, const Rational& t) {
  return a.value + (b.value - a.value) * (t - a.t) / (b.t - a.t);
}

// Union of knot parameters of two profiles on the same edge.
std::vector<Rational> merged_params(const std::vector<Knot>& p, const std::vector<Knot>& q) {
  std::vector<Rational> ts;
  for (const auto& k : p) ts.push_back(k.t);
  for (const auto& k : q) ts.push_back(k.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

Rational profile_value(const std::vector<Knot>& profile, const Rational& t) {
  auto it = std::lower_bound(profile.begin(), profile.end(), t, [](const Knot& k, const Rational& x) { return k.t < x; });
  if (it->t == t) return it->value;
  return interpolate(*(it - 1), *it, t);
}

}  // namespace

PLFunction::PLFunction(std::shared_ptr<const GeometricTree> tree, std::vector<Rational> vertex_values,
                       std::vector<std::vector<Knot>> breakpoints)
    : tree_(std::move(tree)), vertex_values_(std::move(vertex_values)), breakpoints_(std::move(breakpoints)) {
  if (!tree_) throw InvalidInput("function needs a tree");
  if (vertex_values_.size() != tree_->vertex_count()) throw InvalidInput("one value per vertex required");
  if (breakpoints_.empty()) breakpoints_.resize(tree_->edge_count());
  if (breakpoints_.size() != tree_->edge_count()) throw InvalidInput("one breakpoint list per edge required");
  for (const auto& list : breakpoints_) {
    for (size_t i = 0; i < list.size(); ++i) {
      if (list[i].t <= 0 || list[i].t >= 1) throw InvalidInput("breakpoint parameter must lie strictly inside (0,1)");
      if (i > 0 && list[i].t <= list[i - 1].t) throw InvalidInput("breakpoints must be strictly increasing");
    }
  }
}

PLFunction::PLFunction(std::shared_ptr<const GeometricTree> tree, std::vector<Rational> vertex_values)
    : PLFunction(std::move(tree), std::move(vertex_values), {}) {}

std::vector<Knot> PLFunction::edge_profile(EdgeId e) const {
  const Edge& ed = tree_->edge(e);
  std::vector<Knot> out;
  out.push_back({0, vertex_values_[ed.u]});
  const auto& inner = breakpoints(e);
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back({1, vertex_values_[ed.v]});
  return out;
}

Rational PLFunction::evaluate_on_edge(EdgeId e, const Rational& t) const {
  if (t < 0 || t > 1) throw InvalidInput("edge parameter outside [0,1]");
  return profile_value(edge_profile(e), t);
}

Rational PLFunction::evaluate(const TreePoint& p) const {
  if (p.is_vertex()) return vertex_value(p.vertex());
  return evaluate_on_edge(p.edge(), p.param());
}

PLFunction PLFunction::simplified() const {
  std::vector<std::vector<Knot>> bps(tree_->edge_count());
  for (size_t e = 0; e < tree_->edge_count(); ++e) {
    auto prof = edge_profile(static_cast<EdgeId>(e));
    std::vector<Knot> kept{prof.front()};
    for (size_t i = 1; i + 1 < prof.size(); ++i) {
      const Knot& a = kept.back();
      const Knot& b = prof[i];
      const Knot& c = prof[i + 1];
      // keep b unless the slopes a->b and b->c agree
      if ((b.value - a.value) * (c.t - b.t) != (c.value - b.value) * (b.t - a.t)) kept.push_back(b);
    }
    bps[e].assign(kept.begin() + 1, kept.end());
  }
  return PLFunction(tree_, vertex_values_, std::move(bps));
}

bool PLFunction::operator==(const PLFunction& o) const {
  return (tree_ == o.tree_ || *tree_ == *o.tree_) && vertex_values_ == o.vertex_values_ &&
         breakpoints_ == o.breakpoints_;
}

KnotGraph build_knot_graph(const PLFunction& f) {
  const GeometricTree& tree = f.tree();
  KnotGraph g;
  for (size_t v = 0; v < tree.vertex_count(); ++v) {
    g.points.push_back(TreePoint::at_vertex(static_cast<VertexId>(v)));
    g.values.push_back(f.vertex_value(static_cast<VertexId>(v)));
  }
  for (size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edge(static_cast<EdgeId>(e));
    int prev = ed.u;
    Rational prev_t = 0;
    for (const Knot& k : f.breakpoints(static_cast<EdgeId>(e))) {
      int id = static_cast<int>(g.points.size());
      g.points.push_back(TreePoint::interior(static_cast<EdgeId>(e), k.t));
      g.values.push_back(k.value);
      g.segments.push_back({prev, id, static_cast<EdgeId>(e), prev_t, k.t});
      prev = id;
      prev_t = k.t;
    }
    g.segments.push_back({prev, ed.v, static_cast<EdgeId>(e), prev_t, 1});
  }
  g.touching.assign(g.points.size(), {});
  for (size_t s = 0; s < g.segments.size(); ++s) {
    g.touching[g.segments[s].a].push_back(static_cast<int>(s));
    g.touching[g.segments[s].b].push_back(static_cast<int>(s));
  }
  return g;
}

namespace {

// Atoms of a set of knots plus whole segments, as vertices and intervals.
void add_knot_atom(const KnotGraph& g, int k, std::vector<VertexId>& vs, std::vector<EdgeInterval>& ivs) {
  const TreePoint& p = g.points[k];
  if (p.is_vertex()) {
    vs.push_back(p.vertex());
  } else {
    ivs.push_back({p.edge(), p.param(), p.param()});
  }
}

}  // namespace

std::vector<LocalMinimum> local_minima(const PLFunction& f) {
  KnotGraph g = build_knot_graph(f);
  const size_t n = g.points.size();
  DisjointSets plateaus(n);
  for (const auto& s : g.segments) {
    if (g.values[s.a] == g.values[s.b]) plateaus.unite(s.a, s.b);
  }
  std::vector<bool> is_min(n, true);
  for (const auto& s : g.segments) {
    if (g.values[s.a] < g.values[s.b]) is_min[plateaus.find(s.b)] = false;
    if (g.values[s.b] < g.values[s.a]) is_min[plateaus.find(s.a)] = false;
  }
  std::vector<std::vector<int>> members(n);
  for (size_t k = 0; k < n; ++k) members[plateaus.find(static_cast<int>(k))].push_back(static_cast<int>(k));
  std::vector<std::vector<EdgeInterval>> flat(n);
  for (const auto& s : g.segments) {
    if (g.values[s.a] == g.values[s.b]) flat[plateaus.find(s.a)].push_back({s.edge, s.ta, s.tb});
  }

  std::vector<std::pair<TreePoint, LocalMinimum>> found;
  for (size_t r = 0; r < n; ++r) {
    if (members[r].empty() || !is_min[r]) continue;
    std::vector<VertexId> vs;
    std::vector<EdgeInterval> ivs = flat[r];
    for (int k : members[r]) add_knot_atom(g, k, vs, ivs);
    TreeSubset region = TreeSubset::from_parts(f.tree(), std::move(vs), std::move(ivs));
    TreePoint first = region.boundary_candidates(f.tree()).front();
    found.push_back({first, {std::move(region), g.values[r]}});
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.value != b.second.value) return a.second.value < b.second.value;
    return a.first < b.first;
  });
  std::vector<LocalMinimum> out;
  for (auto& item : found) out.push_back(std::move(item.second));
  return out;
}

namespace {

// Knots of f restricted to the part of one edge inside [lo, hi].
std::vector<Knot> clipped_profile(const PLFunction& f, EdgeId e, const Rational& lo, const Rational& hi) {
  auto prof = f.edge_profile(e);
  std::vector<Knot> out{{lo, profile_value(prof, lo)}};
  for (const Knot& k : prof) {
    if (k.t > lo && k.t < hi) out.push_back(k);
  }
  if (hi != lo) out.push_back({hi, profile_value(prof, hi)});
  return out;
}

}  // namespace

PathMaximum max_on_path(const PLFunction& f, const TreeSubset& path) {
  if (path.empty()) throw InvalidInput("maximum over an empty set");
  const GeometricTree& tree = f.tree();
  std::optional<Rational> best;
  auto see = [&](const Rational& v) {
    if (!best || v > *best) best = v;
  };
  for (VertexId v : path.vertices()) see(f.vertex_value(v));
  std::vector<std::vector<Knot>> clips;
  for (const auto& iv : path.intervals()) {
    clips.push_back(clipped_profile(f, iv.edge, iv.lo, iv.hi));
    for (const Knot& k : clips.back()) see(k.value);
  }
  PathMaximum out;
  out.value = *best;
  std::vector<VertexId> vs;
  std::vector<EdgeInterval> ivs;
  for (VertexId v : path.vertices()) {
    if (f.vertex_value(v) == out.value) vs.push_back(v);
  }
  for (size_t i = 0; i < clips.size(); ++i) {
    EdgeId e = path.intervals()[i].edge;
    const auto& c = clips[i];
    for (size_t k = 0; k < c.size(); ++k) {
      if (c[k].value != out.value) continue;
      if (k + 1 < c.size() && c[k + 1].value == out.value) {
        ivs.push_back({e, c[k].t, c[k + 1].t});
      } else {
        ivs.push_back({e, c[k].t, c[k].t});
      }
    }
  }
  out.regions = connected_components(tree, vs, ivs);
  return out;
}

std::vector<TreeSubset> sublevel_components(const PLFunction& f, const Rational& t) {
  KnotGraph g = build_knot_graph(f);
  std::vector<VertexId> vs;
  std::vector<EdgeInterval> ivs;
  for (size_t k = 0; k < g.points.size(); ++k) {
    if (g.values[k] <= t) add_knot_atom(g, static_cast<int>(k), vs, ivs);
  }
  for (const auto& s : g.segments) {
    const Rational& va = g.values[s.a];
    const Rational& vb = g.values[s.b];
    if (va <= t && vb <= t) {
      ivs.push_back({s.edge, s.ta, s.tb});
    } else if (va <= t) {
      Rational cross = s.ta + (s.tb - s.ta) * (t - va) / (vb - va);
      ivs.push_back({s.edge, s.ta, cross});
    } else if (vb <= t) {
      Rational cross = s.tb - (s.tb - s.ta) * (t - vb) / (va - vb);
      ivs.push_back({s.edge, cross, s.tb});
    }
  }
  return connected_components(f.tree(), vs, ivs);
}

Rational sup_distance(const PLFunction& f, const PLFunction& g) {
  if (!(f.tree() == g.tree())) throw InvalidInput("functions live on different trees");
  Rational best = 0;
  for (size_t v = 0; v < f.tree().vertex_count(); ++v) {
    Rational d = abs(f.vertex_value(static_cast<VertexId>(v)) - g.vertex_value(static_cast<VertexId>(v)));
    if (d > best) best = d;
  }
  for (size_t e = 0; e < f.tree().edge_count(); ++e) {
    auto pf = f.edge_profile(static_cast<EdgeId>(e));
    auto pg = g.edge_profile(static_cast<EdgeId>(e));
    for (const Rational& t : merged_params(pf, pg)) {
      Rational d = abs(profile_value(pf, t) - profile_value(pg, t));
      if (d > best) best = d;
    }
  }
  return best;
}

PLFunction add(const PLFunction& f, const PLFunction& g) {
  if (!(f.tree() == g.tree())) throw InvalidInput("functions live on different trees");
  std::vector<Rational> values;
  for (size_t v = 0; v < f.tree().vertex_count(); ++v) {
    values.push_back(f.vertex_value(static_cast<VertexId>(v)) + g.vertex_value(static_cast<VertexId>(v)));
  }
  std::vector<std::vector<Knot>> bps(f.tree().edge_count());
  for (size_t e = 0; e < f.tree().edge_count(); ++e) {
    auto pf = f.edge_profile(static_cast<EdgeId>(e));
    auto pg = g.edge_profile(static_cast<EdgeId>(e));
    for (const Rational& t : merged_params(pf, pg)) {
      if (t == 0 || t == 1) continue;
      bps[e].push_back({t, profile_value(pf, t) + profile_value(pg, t)});
    }
  }
  return PLFunction(f.tree_ptr(), std::move(values), std::move(bps)).simplified();
}

}  // namespace fibertree
