#include "fibertree/tree_geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "fibertree/errors.hpp"

namespace fibertree {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Parameter of vertex w on edge e (0 at u, 1 at v).
Rational endpoint_param(const Edge& e, VertexId w) { return w == e.u ? Rational(0) : Rational(1); }

struct Anchor {
  VertexId vertex;
  Rational offset;  // distance from the point to the vertex
};

std::vector<Anchor> anchors(const GeometricTree& tree, const TreePoint& p) {
  if (p.is_vertex()) return {{p.vertex(), 0}};
  const Edge& e = tree.edge(p.edge());
  return {{e.u, p.param() * e.length}, {e.v, (1 - p.param()) * e.length}};
}

bool on_closed_edge(const GeometricTree& tree, const TreePoint& p, EdgeId e) {
  if (p.is_vertex()) return tree.edge(e).u == p.vertex() || tree.edge(e).v == p.vertex();
  return p.edge() == e;
}

Rational param_on_edge(const GeometricTree& tree, const TreePoint& p, EdgeId e) {
  if (p.is_vertex()) return endpoint_param(tree.edge(e), p.vertex());
  return p.param();
}

}  // namespace

// ---------------------------------------------------------------- GeometricTree

GeometricTree::GeometricTree(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  const size_t n = names_.size();
  if (n == 0) throw InvalidInput("geometric tree needs at least one vertex");
  {
    std::set<std::string> seen;
    for (const auto& name : names_) {
      if (name.empty()) throw InvalidInput("empty vertex name");
      if (!seen.insert(name).second) throw InvalidInput("duplicate vertex name '" + name + "'");
    }
  }
  if (edges_.size() + 1 != n) {
    throw InvalidInput("a tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                       " edges, got " + std::to_string(edges_.size()));
  }
  incident_.assign(n, {});
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || static_cast<size_t>(e.u) >= n || static_cast<size_t>(e.v) >= n) {
      throw InvalidInput("edge endpoint out of range");
    }
    if (e.u == e.v) throw InvalidInput("self-loop at '" + names_[e.u] + "'");
    if (e.length <= 0) throw InvalidInput("edge " + names_[e.u] + "-" + names_[e.v] + " has non-positive length");
    if (!pairs.insert(std::minmax(e.u, e.v)).second) {
      throw InvalidInput("parallel edges between '" + names_[e.u] + "' and '" + names_[e.v] + "'");
    }
    incident_[e.u].push_back(static_cast<EdgeId>(i));
    incident_[e.v].push_back(static_cast<EdgeId>(i));
  }

  parent_.assign(n, -1);
  depth_.assign(n, -1);
  root_distance_.assign(n, 0);
  std::queue<VertexId> queue;
  queue.push(0);
  depth_[0] = 0;
  size_t reached = 1;
  while (!queue.empty()) {
    VertexId w = queue.front();
    queue.pop();
    for (EdgeId e : incident_[w]) {
      VertexId x = opposite(e, w);
      if (depth_[x] >= 0) continue;
      depth_[x] = depth_[w] + 1;
      parent_[x] = w;
      root_distance_[x] = root_distance_[w] + edges_[e].length;
      queue.push(x);
      ++reached;
    }
  }
  if (reached != n) throw InvalidInput("geometric tree is not connected");

  min_length_ = 0;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (i == 0 || edges_[i].length < min_length_) min_length_ = edges_[i].length;
  }
}

std::optional<VertexId> GeometricTree::find_vertex(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<VertexId>(i);
  }
  return std::nullopt;
}

std::optional<EdgeId> GeometricTree::edge_between(VertexId a, VertexId b) const {
  for (EdgeId e : incident(a)) {
    if (opposite(e, a) == b) return e;
  }
  return std::nullopt;
}

VertexId GeometricTree::opposite(EdgeId e, VertexId v) const {
  const Edge& ed = edge(e);
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  throw InvalidInput("vertex is not an endpoint of the edge");
}

VertexId GeometricTree::lca(VertexId a, VertexId b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

Rational GeometricTree::vertex_distance(VertexId a, VertexId b) const {
  return root_distance_[a] + root_distance_[b] - 2 * root_distance_[lca(a, b)];
}

std::vector<VertexId> GeometricTree::vertex_path(VertexId a, VertexId b) const {
  VertexId top = lca(a, b);
  std::vector<VertexId> up, down;
  for (VertexId x = a; x != top; x = parent_[x]) up.push_back(x);
  for (VertexId x = b; x != top; x = parent_[x]) down.push_back(x);
  up.push_back(top);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

bool GeometricTree::has_branch_point() const {
  for (size_t v = 0; v < names_.size(); ++v) {
    if (incident_[v].size() >= 3) return true;
  }
  return false;
}

Rational GeometricTree::total_length() const {
  Rational total = 0;
  for (const Edge& e : edges_) total += e.length;
  return total;
}

bool GeometricTree::operator==(const GeometricTree& other) const {
  if (names_ != other.names_ || edges_.size() != other.edges_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v ||
        edges_[i].length != other.edges_[i].length) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- TreePoint

TreePoint TreePoint::at_vertex(VertexId v) {
  TreePoint p;
  p.vertex_ = v;
  return p;
}

TreePoint TreePoint::on_edge(const GeometricTree& tree, EdgeId e, const Rational& t) {
  if (e < 0 || static_cast<size_t>(e) >= tree.edge_count()) throw InvalidInput("edge id out of range");
  if (t < 0 || t > 1) throw InvalidInput("edge parameter outside [0,1]: " + to_string(t));
  if (t == 0) return at_vertex(tree.edge(e).u);
  if (t == 1) return at_vertex(tree.edge(e).v);
  TreePoint p;
  p.edge_ = e;
  p.t_ = t;
  return p;
}

TreePoint TreePoint::interior(EdgeId e, const Rational& t) {
  TreePoint p;
  p.edge_ = e;
  p.t_ = t;
  return p;
}

bool TreePoint::operator<(const TreePoint& o) const {
  if (is_vertex() != o.is_vertex()) return is_vertex();
  if (is_vertex()) return vertex_ < o.vertex_;
  if (edge_ != o.edge_) return edge_ < o.edge_;
  return t_ < o.t_;
}

std::string describe(const GeometricTree& tree, const TreePoint& p) {
  if (p.is_vertex()) return tree.name(p.vertex());
  const Edge& e = tree.edge(p.edge());
  return tree.name(e.u) + "-" + tree.name(e.v) + "@" + to_string(p.param());
}

Rational distance(const GeometricTree& tree, const TreePoint& p, const TreePoint& q) {
  if (p == q) return 0;
  if (!p.is_vertex() && on_closed_edge(tree, q, p.edge())) {
    return abs(p.param() - param_on_edge(tree, q, p.edge())) * tree.edge(p.edge()).length;
  }
  if (!q.is_vertex() && on_closed_edge(tree, p, q.edge())) {
    return abs(q.param() - param_on_edge(tree, p, q.edge())) * tree.edge(q.edge()).length;
  }
  std::optional<Rational> best;
  for (const Anchor& a : anchors(tree, p)) {
    for (const Anchor& b : anchors(tree, q)) {
      Rational d = a.offset + tree.vertex_distance(a.vertex, b.vertex) + b.offset;
      if (!best || d < *best) best = d;
    }
  }
  return *best;
}

// ---------------------------------------------------------------- Arc

Arc Arc::between(const GeometricTree& tree, const TreePoint& a, const TreePoint& b) {
  Arc arc;
  arc.start_ = a;
  arc.end_ = b;
  arc.length_ = 0;
  if (a == b) return arc;

  if (!a.is_vertex() && on_closed_edge(tree, b, a.edge())) {
    arc.segments_.push_back({a.edge(), a.param(), param_on_edge(tree, b, a.edge())});
  } else if (!b.is_vertex() && on_closed_edge(tree, a, b.edge())) {
    arc.segments_.push_back({b.edge(), param_on_edge(tree, a, b.edge()), b.param()});
  } else {
    std::optional<Rational> best;
    Anchor from{0, 0}, to{0, 0};
    for (const Anchor& x : anchors(tree, a)) {
      for (const Anchor& y : anchors(tree, b)) {
        Rational d = x.offset + tree.vertex_distance(x.vertex, y.vertex) + y.offset;
        if (!best || d < *best) {
          best = d;
          from = x;
          to = y;
        }
      }
    }
    if (!a.is_vertex()) {
      arc.segments_.push_back({a.edge(), a.param(), endpoint_param(tree.edge(a.edge()), from.vertex)});
    }
    auto path = tree.vertex_path(from.vertex, to.vertex);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      EdgeId e = *tree.edge_between(path[i], path[i + 1]);
      arc.segments_.push_back({e, endpoint_param(tree.edge(e), path[i]), endpoint_param(tree.edge(e), path[i + 1])});
    }
    if (!b.is_vertex()) {
      arc.segments_.push_back({b.edge(), endpoint_param(tree.edge(b.edge()), to.vertex), b.param()});
    }
  }
  for (const auto& s : arc.segments_) {
    Rational len = abs(s.t1 - s.t0) * tree.edge(s.edge).length;
    arc.seg_lengths_.push_back(len);
    arc.length_ += len;
  }
  return arc;
}

TreePoint Arc::point_at(const GeometricTree& tree, const Rational& s) const {
  if (s < 0 || s > length_) throw InvalidInput("arc coordinate out of range: " + to_string(s));
  if (s == 0) return start_;
  if (s == length_) return end_;
  Rational acc = 0;
  for (size_t i = 0; i < segments_.size(); ++i) {
    const Rational& len = seg_lengths_[i];
    if (s <= acc + len) {
      const ArcSegment& seg = segments_[i];
      Rational t = seg.t0 + (seg.t1 - seg.t0) * (s - acc) / len;
      return TreePoint::on_edge(tree, seg.edge, t);
    }
    acc += len;
  }
  return end_;
}

std::optional<Rational> Arc::locate(const GeometricTree& tree, const TreePoint& p) const {
  if (p == start_) return Rational(0);
  if (p == end_) return length_;
  Rational acc = 0;
  for (size_t i = 0; i < segments_.size(); ++i) {
    const ArcSegment& seg = segments_[i];
    const Rational& len = seg_lengths_[i];
    if (p.is_vertex()) {
      if (on_closed_edge(tree, p, seg.edge)) {
        Rational tp = endpoint_param(tree.edge(seg.edge), p.vertex());
        if (tp == seg.t0) return acc;
        if (tp == seg.t1) return Rational(acc + len);
      }
    } else if (p.edge() == seg.edge) {
      const Rational& lo = fibertree::min(seg.t0, seg.t1);
      const Rational& hi = fibertree::max(seg.t0, seg.t1);
      if (lo <= p.param() && p.param() <= hi) {
        return Rational(acc + abs(p.param() - seg.t0) * tree.edge(seg.edge).length);
      }
    }
    acc += len;
  }
  return std::nullopt;
}

std::vector<Rational> Arc::vertex_positions(const GeometricTree& tree) const {
  std::vector<Rational> out;
  if (degenerate()) {
    if (start_.is_vertex()) out.push_back(0);
    return out;
  }
  Rational acc = 0;
  for (size_t i = 0; i < segments_.size(); ++i) {
    const ArcSegment& seg = segments_[i];
    if (seg.t0 == 0 || seg.t0 == 1) out.push_back(acc);
    acc += seg_lengths_[i];
    if (seg.t1 == 0 || seg.t1 == 1) out.push_back(acc);
  }
  (void)tree;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Arc Arc::reversed() const {
  Arc arc;
  arc.start_ = end_;
  arc.end_ = start_;
  arc.length_ = length_;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) arc.segments_.push_back({it->edge, it->t1, it->t0});
  arc.seg_lengths_.assign(seg_lengths_.rbegin(), seg_lengths_.rend());
  return arc;
}

Arc Arc::sub(const GeometricTree& tree, const Rational& s0, const Rational& s1) const {
  return between(tree, point_at(tree, s0), point_at(tree, s1));
}

// ---------------------------------------------------------------- TreeSubset

TreeSubset TreeSubset::point(const GeometricTree& tree, const TreePoint& p) {
  TreeSubset s;
  if (p.is_vertex()) {
    if (p.vertex() < 0 || static_cast<size_t>(p.vertex()) >= tree.vertex_count()) {
      throw InvalidInput("vertex id out of range");
    }
    s.vertices_.push_back(p.vertex());
  } else {
    s.intervals_.push_back({p.edge(), p.param(), p.param()});
  }
  return s;
}

TreeSubset TreeSubset::whole(const GeometricTree& tree) {
  TreeSubset s;
  for (size_t v = 0; v < tree.vertex_count(); ++v) s.vertices_.push_back(static_cast<VertexId>(v));
  for (size_t e = 0; e < tree.edge_count(); ++e) s.intervals_.push_back({static_cast<EdgeId>(e), 0, 1});
  return s;
}

TreeSubset TreeSubset::of_arc(const GeometricTree& tree, const Arc& arc) {
  if (arc.degenerate()) return point(tree, arc.start());
  std::vector<VertexId> vertices;
  std::vector<EdgeInterval> intervals;
  for (const ArcSegment& seg : arc.segments()) {
    intervals.push_back({seg.edge, fibertree::min(seg.t0, seg.t1), fibertree::max(seg.t0, seg.t1)});
  }
  return from_parts(tree, std::move(vertices), std::move(intervals));
}

TreeSubset TreeSubset::from_parts(const GeometricTree& tree, std::vector<VertexId> vertices,
                                  std::vector<EdgeInterval> intervals) {
  for (VertexId v : vertices) {
    if (v < 0 || static_cast<size_t>(v) >= tree.vertex_count()) throw InvalidInput("vertex id out of range");
  }
  for (const auto& iv : intervals) {
    if (iv.edge < 0 || static_cast<size_t>(iv.edge) >= tree.edge_count()) throw InvalidInput("edge id out of range");
    if (iv.lo < 0 || iv.hi > 1 || iv.lo > iv.hi) {
      throw InvalidInput("invalid edge interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]");
    }
  }
  std::sort(intervals.begin(), intervals.end(), [](const EdgeInterval& a, const EdgeInterval& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.lo < b.lo;
  });
  std::vector<EdgeInterval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && merged.back().edge == iv.edge) {
      if (iv.lo <= merged.back().hi) {
        if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
        continue;
      }
      throw InvalidInput("subset is not connected (two pieces on one edge)");
    }
    merged.push_back(iv);
  }

  TreeSubset s;
  for (const auto& iv : merged) {
    const Edge& e = tree.edge(iv.edge);
    if (iv.lo == 0) vertices.push_back(e.u);
    if (iv.hi == 1) vertices.push_back(e.v);
    if (iv.lo == iv.hi && (iv.lo == 0 || iv.lo == 1)) continue;
    s.intervals_.push_back(iv);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  s.vertices_ = std::move(vertices);

  // connectivity of the piece graph: vertices, then intervals
  const size_t nv = s.vertices_.size();
  const size_t pieces = nv + s.intervals_.size();
  if (pieces > 1) {
    UnionFind uf(pieces);
    auto vertex_piece = [&](VertexId v) -> int {
      auto it = std::lower_bound(s.vertices_.begin(), s.vertices_.end(), v);
      return (it != s.vertices_.end() && *it == v) ? static_cast<int>(it - s.vertices_.begin()) : -1;
    };
    size_t components = pieces;
    for (size_t i = 0; i < s.intervals_.size(); ++i) {
      const auto& iv = s.intervals_[i];
      const Edge& e = tree.edge(iv.edge);
      if (iv.lo == 0 && uf.unite(static_cast<int>(nv + i), vertex_piece(e.u))) --components;
      if (iv.hi == 1 && uf.unite(static_cast<int>(nv + i), vertex_piece(e.v))) --components;
    }
    if (components != 1) throw InvalidInput("subset is not connected");
  }
  return s;
}

const EdgeInterval* TreeSubset::interval_on(EdgeId e) const {
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), e,
                             [](const EdgeInterval& iv, EdgeId id) { return iv.edge < id; });
  return (it != intervals_.end() && it->edge == e) ? &*it : nullptr;
}

bool TreeSubset::contains(const TreePoint& p) const {
  if (p.is_vertex()) return std::binary_search(vertices_.begin(), vertices_.end(), p.vertex());
  const EdgeInterval* iv = interval_on(p.edge());
  return iv && iv->lo <= p.param() && p.param() <= iv->hi;
}

TreePoint TreeSubset::any_point() const {
  if (!vertices_.empty()) return TreePoint::at_vertex(vertices_.front());
  if (intervals_.empty()) throw InvalidInput("empty subset has no points");
  // no vertices, so the single interval lies strictly inside its edge
  const EdgeInterval& iv = intervals_.front();
  return TreePoint::interior(iv.edge, iv.lo);
}

std::vector<TreePoint> TreeSubset::boundary_candidates(const GeometricTree& tree) const {
  std::vector<TreePoint> out;
  for (VertexId v : vertices_) out.push_back(TreePoint::at_vertex(v));
  for (const auto& iv : intervals_) {
    out.push_back(TreePoint::on_edge(tree, iv.edge, iv.lo));
    if (iv.hi != iv.lo) out.push_back(TreePoint::on_edge(tree, iv.edge, iv.hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational TreeSubset::total_length(const GeometricTree& tree) const {
  Rational total = 0;
  for (const auto& iv : intervals_) total += (iv.hi - iv.lo) * tree.edge(iv.edge).length;
  return total;
}

std::string describe(const GeometricTree& tree, const TreeSubset& s) {
  std::string out = "{";
  bool first = true;
  for (VertexId v : s.vertices()) {
    out += (first ? "" : ", ") + tree.name(v);
    first = false;
  }
  for (const auto& iv : s.intervals()) {
    const Edge& e = tree.edge(iv.edge);
    out += (first ? "" : ", ") + tree.name(e.u) + "-" + tree.name(e.v) + "[" + to_string(iv.lo) + "," +
           to_string(iv.hi) + "]";
    first = false;
  }
  return out + "}";
}

bool intersects(const TreeSubset& a, const TreeSubset& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  for (size_t i = 0, j = 0; i < va.size() && j < vb.size();) {
    if (va[i] == vb[j]) return true;
    if (va[i] < vb[j]) ++i; else ++j;
  }
  for (const auto& iv : a.intervals()) {
    const EdgeInterval* other = b.interval_on(iv.edge);
    if (other && fibertree::max(iv.lo, other->lo) <= fibertree::min(iv.hi, other->hi)) return true;
  }
  return false;
}

bool is_subset(const TreeSubset& inner, const TreeSubset& outer) {
  for (VertexId v : inner.vertices()) {
    if (!outer.contains(TreePoint::at_vertex(v))) return false;
  }
  for (const auto& iv : inner.intervals()) {
    const EdgeInterval* o = outer.interval_on(iv.edge);
    if (!o || iv.lo < o->lo || iv.hi > o->hi) return false;
  }
  return true;
}

TreeSubset intersection(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b) {
  std::vector<VertexId> vertices;
  std::set_intersection(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
                        std::back_inserter(vertices));
  std::vector<EdgeInterval> intervals;
  for (const auto& iv : a.intervals()) {
    const EdgeInterval* other = b.interval_on(iv.edge);
    if (!other) continue;
    Rational lo = fibertree::max(iv.lo, other->lo);
    Rational hi = fibertree::min(iv.hi, other->hi);
    if (lo <= hi) intervals.push_back({iv.edge, lo, hi});
  }
  return TreeSubset::from_parts(tree, std::move(vertices), std::move(intervals));
}

TreeSubset unite(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b) {
  std::vector<VertexId> vertices = a.vertices();
  vertices.insert(vertices.end(), b.vertices().begin(), b.vertices().end());
  std::vector<EdgeInterval> intervals = a.intervals();
  intervals.insert(intervals.end(), b.intervals().begin(), b.intervals().end());
  return TreeSubset::from_parts(tree, std::move(vertices), std::move(intervals));
}

std::vector<TreeSubset> connected_components(const GeometricTree& tree, const std::vector<VertexId>& vertices,
                                             const std::vector<EdgeInterval>& intervals) {
  // atoms: vertices first, then intervals sorted by (edge, lo)
  std::vector<VertexId> vs = vertices;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<EdgeInterval> ivs = intervals;
  std::sort(ivs.begin(), ivs.end(), [](const EdgeInterval& a, const EdgeInterval& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.lo < b.lo;
  });
  const size_t nv = vs.size();
  UnionFind uf(nv + ivs.size());
  auto vertex_atom = [&](VertexId v) -> int {
    auto it = std::lower_bound(vs.begin(), vs.end(), v);
    return (it != vs.end() && *it == v) ? static_cast<int>(it - vs.begin()) : -1;
  };
  std::vector<int> extra_vertices;  // interval endpoints at vertices not listed
  for (size_t i = 0; i < ivs.size(); ++i) {
    const Edge& e = tree.edge(ivs[i].edge);
    int me = static_cast<int>(nv + i);
    if (ivs[i].lo == 0) {
      if (int a = vertex_atom(e.u); a >= 0) uf.unite(me, a);
    }
    if (ivs[i].hi == 1) {
      if (int a = vertex_atom(e.v); a >= 0) uf.unite(me, a);
    }
    // same edge, sorted by lo: running maximum of hi decides overlap
    if (i > 0 && ivs[i - 1].edge == ivs[i].edge) {
      size_t j = i - 1;
      Rational reach = ivs[j].hi;
      int reach_atom = static_cast<int>(nv + j);
      while (j > 0 && ivs[j - 1].edge == ivs[i].edge) {
        --j;
        if (ivs[j].hi > reach) {
          reach = ivs[j].hi;
          reach_atom = static_cast<int>(nv + j);
        }
      }
      if (ivs[i].lo <= reach) uf.unite(me, reach_atom);
    }
  }
  // intervals touching a common endpoint that is not itself listed
  std::map<VertexId, int> touch;
  for (size_t i = 0; i < ivs.size(); ++i) {
    const Edge& e = tree.edge(ivs[i].edge);
    int me = static_cast<int>(nv + i);
    for (auto [hit, w] : {std::pair{ivs[i].lo == 0, e.u}, std::pair{ivs[i].hi == 1, e.v}}) {
      if (!hit || vertex_atom(w) >= 0) continue;
      auto [it, fresh] = touch.emplace(w, me);
      if (!fresh) uf.unite(me, it->second);
    }
  }
  std::map<int, std::pair<std::vector<VertexId>, std::vector<EdgeInterval>>> groups;
  for (size_t a = 0; a < nv; ++a) groups[uf.find(static_cast<int>(a))].first.push_back(vs[a]);
  for (size_t i = 0; i < ivs.size(); ++i) groups[uf.find(static_cast<int>(nv + i))].second.push_back(ivs[i]);
  std::vector<std::pair<TreePoint, TreeSubset>> out;
  for (auto& [root, parts] : groups) {
    TreeSubset s = TreeSubset::from_parts(tree, std::move(parts.first), std::move(parts.second));
    auto pts = s.boundary_candidates(tree);
    out.emplace_back(pts.front(), std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TreeSubset> result;
  for (auto& [p, s] : out) result.push_back(std::move(s));
  return result;
}

std::optional<std::pair<Rational, Rational>> arc_overlap(const GeometricTree& tree, const Arc& arc,
                                                         const TreeSubset& s) {
  if (arc.degenerate()) {
    if (s.contains(arc.start())) return std::make_pair(Rational(0), Rational(0));
    return std::nullopt;
  }
  std::optional<Rational> lo, hi;
  auto hit = [&](const Rational& x) {
    if (!lo || x < *lo) lo = x;
    if (!hi || x > *hi) hi = x;
  };
  Rational acc = 0;
  for (const ArcSegment& seg : arc.segments()) {
    const Edge& e = tree.edge(seg.edge);
    Rational seg_len = abs(seg.t1 - seg.t0) * e.length;
    auto to_arc = [&](const Rational& t) { return Rational(acc + abs(t - seg.t0) * e.length); };
    if (const EdgeInterval* iv = s.interval_on(seg.edge)) {
      Rational a = fibertree::max(fibertree::min(seg.t0, seg.t1), iv->lo);
      Rational b = fibertree::min(fibertree::max(seg.t0, seg.t1), iv->hi);
      if (a <= b) {
        hit(to_arc(a));
        hit(to_arc(b));
      }
    }
    if ((seg.t0 == 0 || seg.t0 == 1) && s.contains(TreePoint::at_vertex(seg.t0 == 0 ? e.u : e.v))) hit(acc);
    if ((seg.t1 == 0 || seg.t1 == 1) && s.contains(TreePoint::at_vertex(seg.t1 == 0 ? e.u : e.v))) {
      hit(acc + seg_len);
    }
    acc += seg_len;
  }
  if (!lo) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

Arc shortest_path_arc(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b) {
  if (a.empty() || b.empty()) throw InvalidInput("shortest path between empty subsets");
  if (intersects(a, b)) {
    TreePoint p = intersection(tree, a, b).any_point();
    return Arc::between(tree, p, p);
  }
  Arc arc = Arc::between(tree, a.any_point(), b.any_point());
  auto in_a = arc_overlap(tree, arc, a);
  auto in_b = arc_overlap(tree, arc, b);
  if (!in_a || !in_b || in_a->second >= in_b->first) throw InternalError("shortest_path: inconsistent overlaps");
  return arc.sub(tree, in_a->second, in_b->first);
}

TreeSubset shortest_path(const GeometricTree& tree, const TreeSubset& a, const TreeSubset& b) {
  return TreeSubset::of_arc(tree, shortest_path_arc(tree, a, b));
}

TreeSubset convex_hull(const GeometricTree& tree, std::span<const TreeSubset> members) {
  if (members.empty()) throw InvalidInput("convex hull of an empty collection");
  TreeSubset hull = members.front();
  if (hull.empty()) throw InvalidInput("convex hull member is empty");
  for (size_t i = 1; i < members.size(); ++i) {
    if (members[i].empty()) throw InvalidInput("convex hull member is empty");
    if (is_subset(members[i], hull)) continue;
    TreeSubset bridge = shortest_path(tree, hull, members[i]);
    hull = unite(tree, unite(tree, hull, bridge), members[i]);
  }
  return hull;
}

TreePoint project(const GeometricTree& tree, const TreePoint& p, const TreeSubset& a) {
  if (a.empty()) throw InvalidInput("projection onto an empty subset");
  if (a.contains(p)) return p;
  Arc arc = Arc::between(tree, p, a.any_point());
  auto overlap = arc_overlap(tree, arc, a);
  if (!overlap) throw InternalError("project: arc misses its own endpoint");
  return arc.point_at(tree, overlap->first);
}

Rational distance(const GeometricTree& tree, const TreePoint& p, const TreeSubset& a) {
  return distance(tree, p, project(tree, p, a));
}

Rational diameter(const GeometricTree& tree, const TreeSubset& a) {
  if (a.empty()) throw InvalidInput("diameter of an empty subset");
  auto pts = a.boundary_candidates(tree);
  Rational best = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      Rational d = distance(tree, pts[i], pts[j]);
      if (d > best) best = d;
    }
  }
  return best;
}

// ---------------------------------------------------------------- Subdivision

namespace {

struct RefinedParts {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::vector<std::vector<VertexId>> interior;
  std::vector<std::vector<EdgeId>> chain;
};

RefinedParts refine(const GeometricTree& base, int pieces) {
  if (pieces < 1) throw InvalidInput("subdivision needs at least one piece per edge");
  RefinedParts r;
  for (size_t v = 0; v < base.vertex_count(); ++v) r.names.push_back(base.name(static_cast<VertexId>(v)));
  for (size_t ei = 0; ei < base.edge_count(); ++ei) {
    const Edge& e = base.edge(static_cast<EdgeId>(ei));
    std::vector<VertexId> interior;
    for (int k = 1; k < pieces; ++k) {
      interior.push_back(static_cast<VertexId>(r.names.size()));
      r.names.push_back(base.name(e.u) + "~" + base.name(e.v) + "#" + std::to_string(k));
    }
    std::vector<VertexId> chain_vertices{e.u};
    chain_vertices.insert(chain_vertices.end(), interior.begin(), interior.end());
    chain_vertices.push_back(e.v);
    std::vector<EdgeId> chain;
    for (size_t k = 0; k + 1 < chain_vertices.size(); ++k) {
      chain.push_back(static_cast<EdgeId>(r.edges.size()));
      r.edges.push_back({chain_vertices[k], chain_vertices[k + 1], e.length / pieces});
    }
    r.interior.push_back(std::move(interior));
    r.chain.push_back(std::move(chain));
  }
  return r;
}

}  // namespace

Subdivision::Subdivision(const GeometricTree& base, int pieces)
    : pieces_(pieces), refined_([&] {
        RefinedParts r = refine(base, pieces);
        return GeometricTree(std::move(r.names), std::move(r.edges));
      }()) {
  RefinedParts r = refine(base, pieces);
  interior_ = std::move(r.interior);
  chain_ = std::move(r.chain);
}

TreePoint Subdivision::map_point(const TreePoint& p) const {
  if (p.is_vertex()) return p;
  Rational x = p.param() * pieces_;
  mpz_class k = x.get_num() / x.get_den();  // floor, x > 0
  long idx = k.get_si();
  Rational frac = x - Rational(k);
  if (frac == 0) return TreePoint::at_vertex(interior_[p.edge()][idx - 1]);
  return TreePoint::on_edge(refined_, chain_[p.edge()][idx], frac);
}

TreeSubset Subdivision::map_subset(const TreeSubset& s) const {
  std::vector<VertexId> vertices = s.vertices();
  std::vector<EdgeInterval> intervals;
  for (const auto& iv : s.intervals()) {
    for (int k = 0; k < pieces_; ++k) {
      Rational a = fibertree::max(iv.lo, Rational(k, pieces_));
      Rational b = fibertree::min(iv.hi, Rational(k + 1, pieces_));
      a.canonicalize();
      b.canonicalize();
      if (a > b) continue;
      intervals.push_back({chain_[iv.edge][k], a * pieces_ - k, b * pieces_ - k});
    }
  }
  return TreeSubset::from_parts(refined_, std::move(vertices), std::move(intervals));
}

// ---------------------------------------------------------------- named shapes

GeometricTree star_tree(int arms, const Rational& arm_length) {
  if (arms < 1) throw InvalidInput("star needs at least one arm");
  static const char* kLeafNames[] = {"a", "b", "d", "e", "f", "g", "h", "i"};
  std::vector<std::string> names{"c"};
  std::vector<Edge> edges;
  for (int k = 0; k < arms; ++k) {
    names.push_back(k < 8 ? kLeafNames[k] : "a" + std::to_string(k));
    edges.push_back({0, k + 1, arm_length});
  }
  return GeometricTree(std::move(names), std::move(edges));
}

GeometricTree path_tree(int edges, const Rational& edge_length) {
  if (edges < 0) throw InvalidInput("negative edge count");
  std::vector<std::string> names;
  std::vector<Edge> es;
  for (int k = 0; k <= edges; ++k) names.push_back("p" + std::to_string(k));
  for (int k = 0; k < edges; ++k) es.push_back({k, k + 1, edge_length});
  return GeometricTree(std::move(names), std::move(es));
}

GeometricTree h_tree(const Rational& edge_length) {
  return GeometricTree({"x", "y", "a", "b", "d", "e"}, {{0, 1, edge_length},
                                                        {0, 2, edge_length},
                                                        {0, 3, edge_length},
                                                        {1, 4, edge_length},
                                                        {1, 5, edge_length}});
}

}  // namespace fibertree
