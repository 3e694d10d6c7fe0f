#include "fibertree/config_space.hpp"

#include <algorithm>
#include <set>

#include "fibertree/errors.hpp"

namespace fibertree {

Configuration::Configuration(std::shared_ptr<const GeometricTree> tree,
                             std::shared_ptr<const CellularMergeTree> merge_tree, std::vector<TreePoint> points)
    : tree_(std::move(tree)), merge_tree_(std::move(merge_tree)), points_(std::move(points)) {
  if (!tree_ || !merge_tree_) throw InvalidInput("configuration needs a tree and a merge tree");
  if (points_.size() != merge_tree_->leaf_count()) {
    throw InvalidInput("configuration has " + std::to_string(points_.size()) + " points but the merge tree has " +
                       std::to_string(merge_tree_->leaf_count()) + " leaves");
  }
  for (const TreePoint& p : points_) {
    if (p.is_vertex() ? static_cast<size_t>(p.vertex()) >= tree_->vertex_count()
                      : (p.edge() < 0 || static_cast<size_t>(p.edge()) >= tree_->edge_count())) {
      throw InvalidInput("configuration point outside the tree");
    }
  }
}

Configuration Configuration::with_points(std::vector<TreePoint> points) const {
  return Configuration(tree_, merge_tree_, std::move(points));
}

namespace {

bool has_duplicate(const std::vector<TreePoint>& points) {
  std::vector<TreePoint> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

TreeSubset hull_of_labels(const Configuration& x, const std::vector<int>& labels) {
  std::vector<TreeSubset> parts;
  for (int l : labels) parts.push_back(TreeSubset::point(x.tree(), x.point(l)));
  return convex_hull(x.tree(), parts);
}

}  // namespace

TreeSubset node_hull(const Configuration& x, int v) {
  return hull_of_labels(x, x.merge_tree().descendant_leaves(v));
}

std::vector<TreeSubset> all_node_hulls(const Configuration& x) {
  const CellularMergeTree& t = x.merge_tree();
  std::vector<TreeSubset> hulls(t.size());
  for (int leaf : t.leaves()) hulls[leaf] = TreeSubset::point(x.tree(), x.point(t.leaf_label(leaf)));
  for (int v : t.internal_nodes()) {
    std::vector<TreeSubset> parts;
    for (int c : t.node(v).children) parts.push_back(hulls[c]);
    hulls[v] = convex_hull(x.tree(), parts);
  }
  return hulls;
}

Membership is_member(const Configuration& x) {
  if (has_duplicate(x.points())) throw InvalidInput("configuration points are not distinct");
  const CellularMergeTree& t = x.merge_tree();
  auto hulls = all_node_hulls(x);
  // hulls of incomparable nodes sit inside hulls of two siblings, so
  // checking siblings decides every pair
  for (int v : t.internal_nodes()) {
    const auto& ch = t.node(v).children;
    for (size_t a = 0; a < ch.size(); ++a) {
      for (size_t b = a + 1; b < ch.size(); ++b) {
        if (intersects(hulls[ch[a]], hulls[ch[b]])) return {false, std::make_pair(ch[a], ch[b])};
      }
    }
  }
  return {};
}

std::vector<int> arc_order(const Configuration& x, const Arc& arc) {
  std::vector<std::pair<Rational, int>> pos;
  for (size_t i = 0; i < x.size(); ++i) {
    auto s = arc.locate(x.tree(), x.point(static_cast<int>(i)));
    if (!s) throw InvalidInput("point " + std::to_string(i + 1) + " is not on the arc");
    pos.emplace_back(*s, static_cast<int>(i));
  }
  std::sort(pos.begin(), pos.end());
  std::vector<int> out;
  for (auto& [s, i] : pos) out.push_back(i);
  return out;
}

ChiralStructure chiral_structure(const Configuration& x, const Arc& arc) {
  auto order = arc_order(x, arc);
  if (!is_member(x).member) throw InvalidInput("configuration violates the merge-tree constraint");
  const CellularMergeTree& t = x.merge_tree();
  std::vector<int> rank(x.size());
  for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  ChiralStructure out;
  out.children.assign(t.size(), {-1, -1});
  for (int v : t.internal_nodes()) {
    const auto& ch = t.node(v).children;
    if (ch.size() != 2) throw InvalidInput("chirality needs a binary merge tree");
    auto ranks_of = [&](int node) {
      std::vector<int> rs;
      for (int l : t.descendant_leaves(node)) rs.push_back(rank[l]);
      std::sort(rs.begin(), rs.end());
      return rs;
    };
    auto all = ranks_of(v);
    if (all.back() - all.front() + 1 != static_cast<int>(all.size())) {
      throw InternalError("descendants of '" + t.node(v).name + "' are not contiguous along the arc");
    }
    int a = ch[0], b = ch[1];
    if (ranks_of(a).front() > ranks_of(b).front()) std::swap(a, b);
    out.children[v] = {a, b};
  }
  return out;
}

// ---------------------------------------------------------------- paths

Configuration apply_move(const Configuration& x, const Move& move) {
  std::vector<TreePoint> pts = x.points();
  if (const auto* pm = std::get_if<PointMove>(&move)) {
    if (pm->index < 0 || static_cast<size_t>(pm->index) >= pts.size()) throw InternalError("move index out of range");
    if (pm->route.start() != pts[pm->index]) throw InternalError("point move does not start at the point");
    pts[pm->index] = pm->route.end();
  } else {
    const auto& lm = std::get<LineMove>(move);
    if (lm.from.size() != pts.size() || lm.to.size() != pts.size()) throw InternalError("line move size mismatch");
    for (size_t i = 0; i < pts.size(); ++i) {
      if (lm.track.point_at(x.tree(), lm.from[i]) != pts[i]) throw InternalError("line move does not start at x");
      pts[i] = lm.track.point_at(x.tree(), lm.to[i]);
    }
  }
  return x.with_points(std::move(pts));
}

Configuration configuration_at(const Configuration& x, const Move& move, const Rational& tau) {
  std::vector<TreePoint> pts = x.points();
  if (const auto* pm = std::get_if<PointMove>(&move)) {
    pts[pm->index] = pm->route.point_at(x.tree(), tau * pm->route.length());
  } else {
    const auto& lm = std::get<LineMove>(move);
    for (size_t i = 0; i < pts.size(); ++i) {
      pts[i] = lm.track.point_at(x.tree(), lm.from[i] + tau * (lm.to[i] - lm.from[i]));
    }
  }
  return x.with_points(std::move(pts));
}

ConfigPath::ConfigPath(Configuration start) : start_(start), end_(std::move(start)) {}

void ConfigPath::append(Move move) {
  end_ = apply_move(end_, move);
  moves_.push_back(std::move(move));
}

void ConfigPath::append(const ConfigPath& tail) {
  if (!(tail.start_ == end_)) throw InternalError("paths do not compose");
  for (const Move& m : tail.moves_) append(m);
}

ConfigPath ConfigPath::reversed() const {
  ConfigPath out(end_);
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) {
    if (const auto* pm = std::get_if<PointMove>(&*it)) {
      out.append(PointMove{pm->index, pm->route.reversed()});
    } else {
      const auto& lm = std::get<LineMove>(*it);
      out.append(LineMove{lm.track, lm.to, lm.from});
    }
  }
  return out;
}

namespace {

void add_midpoints(std::vector<Rational>& times) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<Rational> out;
  for (size_t i = 0; i < times.size(); ++i) {
    if (i > 0) out.push_back((times[i - 1] + times[i]) / 2);
    out.push_back(times[i]);
  }
  times = std::move(out);
}

}  // namespace

std::vector<Rational> audit_times(const Configuration& x, const Move& move) {
  std::vector<Rational> times{0, 1};
  const GeometricTree& tree = x.tree();
  if (const auto* pm = std::get_if<PointMove>(&move)) {
    const Rational& len = pm->route.length();
    if (len == 0) return {0};
    std::vector<Rational> spots = pm->route.vertex_positions(tree);
    for (size_t j = 0; j < x.size(); ++j) {
      if (static_cast<int>(j) == pm->index) continue;
      if (auto s = pm->route.locate(tree, x.point(static_cast<int>(j)))) spots.push_back(*s);
    }
    // boundaries of the hulls formed without the moving point
    const CellularMergeTree& t = x.merge_tree();
    for (int v : t.internal_nodes()) {
      std::vector<int> labels;
      for (int l : t.descendant_leaves(v)) {
        if (l != pm->index) labels.push_back(l);
      }
      if (labels.empty()) continue;
      for (const TreePoint& p : hull_of_labels(x, labels).boundary_candidates(tree)) {
        if (auto s = pm->route.locate(tree, p)) spots.push_back(*s);
      }
    }
    for (const Rational& s : spots) times.push_back(s / len);
  } else {
    const auto& lm = std::get<LineMove>(move);
    auto vertex_spots = lm.track.vertex_positions(tree);
    const size_t n = lm.from.size();
    for (size_t i = 0; i < n; ++i) {
      Rational di = lm.to[i] - lm.from[i];
      if (di == 0) continue;
      for (const Rational& s : vertex_spots) {
        Rational tau = (s - lm.from[i]) / di;
        if (tau > 0 && tau < 1) times.push_back(tau);
      }
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        Rational gap0 = lm.from[i] - lm.from[j];
        Rational gap1 = lm.to[i] - lm.to[j];
        if (gap0 == gap1) continue;
        Rational tau = gap0 / (gap0 - gap1);
        if (tau >= 0 && tau <= 1) times.push_back(tau);
      }
    }
  }
  add_midpoints(times);
  return times;
}

std::vector<Configuration> waypoints(const ConfigPath& path) {
  std::vector<Configuration> out{path.start()};
  Configuration cur = path.start();
  for (const Move& m : path.moves()) {
    for (const Rational& tau : audit_times(cur, m)) {
      if (tau != 0) out.push_back(configuration_at(cur, m, tau));
    }
    cur = apply_move(cur, m);
  }
  return out;
}

AuditReport audit_path(const ConfigPath& path) {
  AuditReport report;
  Configuration cur = path.start();
  auto check = [&](const Configuration& c, size_t move, const Rational& tau) {
    ++report.checked;
    std::string where = "move " + std::to_string(move) + " at time " + to_string(tau);
    if (has_duplicate(c.points())) {
      report.ok = false;
      report.failure = "points collide (" + where + ")";
      return false;
    }
    Membership m = is_member(c);
    if (!m.member) {
      report.ok = false;
      report.failure = "hulls of '" + c.merge_tree().node(m.witness->first).name + "' and '" +
                       c.merge_tree().node(m.witness->second).name + "' meet (" + where + ")";
      return false;
    }
    return true;
  };
  if (!check(cur, 0, 0)) return report;
  for (size_t k = 0; k < path.moves().size(); ++k) {
    const Move& m = path.moves()[k];
    for (const Rational& tau : audit_times(cur, m)) {
      if (tau != 0 && !check(configuration_at(cur, m, tau), k + 1, tau)) return report;
    }
    cur = apply_move(cur, m);
  }
  return report;
}

// ---------------------------------------------------------------- gathering

namespace {

bool inside_edge(const TreePoint& p, EdgeId e) { return !p.is_vertex() && p.edge() == e; }

// Point on edge g at distance d from its endpoint w.
TreePoint at_distance(const GeometricTree& tree, EdgeId g, VertexId w, const Rational& d) {
  const Edge& e = tree.edge(g);
  Rational t = d / e.length;
  return TreePoint::on_edge(tree, g, w == e.u ? t : Rational(1 - t));
}

// Distance from w to the nearest configuration point inside edge g.
std::optional<Rational> nearest_inside(const Configuration& x, EdgeId g, VertexId w) {
  std::optional<Rational> best;
  for (const TreePoint& p : x.points()) {
    if (!inside_edge(p, g)) continue;
    Rational d = distance(x.tree(), p, TreePoint::at_vertex(w));
    if (!best || d < *best) best = d;
  }
  return best;
}

// Short step from vertex w into edge g, far enough from everything else.
TreePoint short_step(const Configuration& x, EdgeId g, VertexId w) {
  const GeometricTree& tree = x.tree();
  Rational delta = tree.min_edge_length() / 2;
  if (auto d = nearest_inside(x, g, w)) delta = fibertree::min(delta, Rational(*d / 2));
  return at_distance(tree, g, w, delta);
}

EdgeId edge_toward(const GeometricTree& tree, VertexId w, EdgeId target) {
  const Edge& e = tree.edge(target);
  if (e.u == w || e.v == w) return target;
  VertexId goal = tree.vertex_distance(w, e.u) < tree.vertex_distance(w, e.v) ? e.u : e.v;
  auto path = tree.vertex_path(w, goal);
  return *tree.edge_between(path[0], path[1]);
}

// Walks down from `node`, at each step entering the child whose hull can be
// reached from z without touching a sibling hull.
int descend(const Configuration& x, const std::vector<TreeSubset>& hulls, int node, TreePoint z) {
  const CellularMergeTree& t = x.merge_tree();
  const GeometricTree& tree = x.tree();
  while (!t.is_leaf(node)) {
    int chosen = -1;
    TreePoint next;
    for (int c : t.node(node).children) {
      TreePoint zc = project(tree, z, hulls[c]);
      TreeSubset access = TreeSubset::of_arc(tree, Arc::between(tree, z, zc));
      bool clear = true;
      for (int other : t.node(node).children) {
        if (other != c && intersects(access, hulls[other])) clear = false;
      }
      if (clear) {
        chosen = c;
        next = zc;
        break;
      }
    }
    if (chosen < 0) throw InternalError("no child hull is reachable during gathering");
    node = chosen;
    z = next;
  }
  return t.leaf_label(node);
}

}  // namespace

std::pair<ConfigPath, EdgeId> gather_to_edge(const Configuration& x, std::optional<EdgeId> target) {
  const GeometricTree& tree = x.tree();
  const CellularMergeTree& t = x.merge_tree();
  if (tree.edge_count() == 0) throw UnsupportedDomain("a one-vertex tree has no edge to gather into");
  if (!is_member(x).member) throw InvalidInput("configuration violates the merge-tree constraint");
  EdgeId e;
  if (target) {
    if (*target < 0 || static_cast<size_t>(*target) >= tree.edge_count()) throw InvalidInput("target edge out of range");
    e = *target;
  } else {
    auto it = std::find_if(x.points().begin(), x.points().end(), [](const TreePoint& p) { return !p.is_vertex(); });
    e = it != x.points().end() ? it->edge() : tree.incident(x.point(0).vertex()).front();
  }
  ConfigPath path(x);

  // no point may sit on a vertex
  for (size_t i = 0; i < x.size(); ++i) {
    const TreePoint& p = path.end().point(static_cast<int>(i));
    if (!p.is_vertex()) continue;
    EdgeId g = edge_toward(tree, p.vertex(), e);
    path.append(PointMove{static_cast<int>(i), Arc::between(tree, p, short_step(path.end(), g, p.vertex()))});
  }

  const Edge& ed = tree.edge(e);
  const TreePoint pu = TreePoint::at_vertex(ed.u);
  const TreePoint pv = TreePoint::at_vertex(ed.v);
  while (true) {
    const Configuration& cur = path.end();
    std::vector<int> inside, outside;
    for (size_t i = 0; i < cur.size(); ++i) {
      (inside_edge(cur.point(static_cast<int>(i)), e) ? inside : outside).push_back(static_cast<int>(i));
    }
    if (outside.empty()) break;
    auto hulls = all_node_hulls(cur);
    VertexId b;
    int chosen;
    if (inside.empty()) {
      b = ed.u;
      chosen = descend(cur, hulls, t.root(), project(tree, pu, hulls[t.root()]));
    } else {
      bool u_side = std::any_of(outside.begin(), outside.end(), [&](int i) {
        return distance(tree, cur.point(i), pu) < distance(tree, cur.point(i), pv);
      });
      b = u_side ? ed.u : ed.v;
      const TreePoint pb = TreePoint::at_vertex(b);
      int j = *std::min_element(inside.begin(), inside.end(), [&](int a, int c) {
        return distance(tree, cur.point(a), pb) < distance(tree, cur.point(c), pb);
      });
      int lj = t.leaves()[j];
      int v0 = lj;
      while (!hulls[v0].contains(pb)) {
        v0 = t.node(v0).parent;
        if (v0 < 0) throw InternalError("no hull contains the gathering vertex");
      }
      int v1 = -1;
      for (int c : t.node(v0).children) {
        if (!t.is_ancestor(c, lj)) {
          v1 = c;
          break;
        }
      }
      chosen = descend(cur, hulls, v1, project(tree, pb, hulls[v1]));
    }
    const TreePoint from = cur.point(chosen);
    const TreePoint pb = TreePoint::at_vertex(b);
    path.append(PointMove{chosen, Arc::between(tree, from, pb)});
    path.append(PointMove{chosen, Arc::between(tree, pb, short_step(path.end(), e, b))});
  }
  return {std::move(path), e};
}

ConfigPath line_travel(const Configuration& x, const Configuration& y, const Arc& arc) {
  if (arc_order(x, arc) != arc_order(y, arc)) throw InvalidInput("configurations differ in order along the arc");
  ConfigPath path(x);
  if (x == y) return path;
  LineMove m{arc, {}, {}};
  for (size_t i = 0; i < x.size(); ++i) {
    m.from.push_back(*arc.locate(x.tree(), x.point(static_cast<int>(i))));
    m.to.push_back(*arc.locate(y.tree(), y.point(static_cast<int>(i))));
  }
  path.append(std::move(m));
  return path;
}

// ---------------------------------------------------------------- star moves

ConfigPath star_reconfigure(const Configuration& x, EdgeId e1, VertexId b, const Arc& orientation,
                            const ChiralStructure& target) {
  const GeometricTree& tree = x.tree();
  const CellularMergeTree& t = x.merge_tree();
  const size_t n = x.size();
  for (const TreePoint& p : x.points()) {
    if (!inside_edge(p, e1)) throw InvalidInput("star reconfiguration needs every point inside the edge");
  }
  if (tree.degree(b) < 3) throw UnsupportedDomain("star reconfiguration needs a vertex of degree at least 3");
  std::vector<EdgeId> others;
  for (EdgeId g : tree.incident(b)) {
    if (g != e1) others.push_back(g);
  }
  std::sort(others.begin(), others.end());
  const EdgeId e2 = others[0];
  const EdgeId e3 = others[1];
  const Rational len2 = tree.edge(e2).length;
  const Rational len3 = tree.edge(e3).length;
  const TreePoint pb = TreePoint::at_vertex(b);
  const Arc track = Arc::between(tree, TreePoint::at_vertex(tree.opposite(e2, b)),
                                 TreePoint::at_vertex(tree.opposite(e1, b)));

  ConfigPath path(x);
  for (int v : t.internal_nodes()) {
    ChiralStructure now = chiral_structure(path.end(), orientation);
    if (now.children[v] == target.children.at(v)) continue;
    if (now.children[v] != std::make_pair(target.children[v].second, target.children[v].first)) {
      throw InvalidInput("target chirality does not match the merge tree");
    }
    // ranks 1..n by distance from b
    const Configuration start = path.end();
    std::vector<int> by_rank(n);
    for (size_t i = 0; i < n; ++i) by_rank[i] = static_cast<int>(i);
    std::sort(by_rank.begin(), by_rank.end(), [&](int a, int c) {
      return distance(tree, start.point(a), pb) < distance(tree, start.point(c), pb);
    });
    std::vector<int> rank_of(n);
    for (size_t r = 0; r < n; ++r) rank_of[by_rank[r]] = static_cast<int>(r) + 1;
    auto block = [&](int node) {
      std::vector<int> rs;
      for (int l : t.descendant_leaves(node)) rs.push_back(rank_of[l]);
      return std::make_pair(*std::min_element(rs.begin(), rs.end()), *std::max_element(rs.begin(), rs.end()));
    };
    auto [c1, c2] = std::make_pair(t.node(v).children[0], t.node(v).children[1]);
    auto blk1 = block(c1);
    auto blk2 = block(c2);
    if (blk2.first < blk1.first) std::swap(blk1, blk2);
    const int i = blk1.first, j = blk1.second, k = blk2.second;
    auto idx = [&](int r) { return by_rank[r - 1]; };
    auto track_pos = [&](const TreePoint& p) { return *track.locate(tree, p); };
    const Rational slots = static_cast<long>(n + 1);

    // 1: ranks 1..j slide across b into e2, keeping their order
    {
      LineMove m{track, {}, {}};
      for (size_t q = 0; q < n; ++q) {
        Rational s = track_pos(path.end().point(static_cast<int>(q)));
        m.from.push_back(s);
        int r = rank_of[q];
        m.to.push_back(r <= j ? Rational(len2 - (j - r + 1) * len2 / slots) : s);
      }
      path.append(std::move(m));
    }
    // 2: ranks j+1..k one by one into e3
    for (int r = j + 1; r <= k; ++r) {
      TreePoint dest = at_distance(tree, e3, b, (k - r + 1) * len3 / slots);
      path.append(PointMove{idx(r), Arc::between(tree, path.end().point(idx(r)), dest)});
    }
    auto back_into_e1 = [&](int r) {
      Rational d = tree.edge(e1).length;
      if (auto near = nearest_inside(path.end(), e1, b)) d = *near;
      TreePoint dest = at_distance(tree, e1, b, d / 2);
      path.append(PointMove{idx(r), Arc::between(tree, path.end().point(idx(r)), dest)});
    };
    // 3: ranks j..i back from e2; 4: ranks k..j+1 back from e3
    for (int r = j; r >= i; --r) back_into_e1(r);
    for (int r = k; r >= j + 1; --r) back_into_e1(r);
    // 5: ranks 1..i-1 slide back into e1 ahead of the swapped blocks
    if (i > 1) {
      Rational d0 = *nearest_inside(path.end(), e1, b);
      LineMove m{track, {}, {}};
      for (size_t q = 0; q < n; ++q) {
        Rational s = track_pos(path.end().point(static_cast<int>(q)));
        m.from.push_back(s);
        int r = rank_of[q];
        m.to.push_back(r < i ? Rational(len2 + r * d0 / i) : s);
      }
      path.append(std::move(m));
    }
  }
  if (chiral_structure(path.end(), orientation) != target) throw InternalError("star reconfiguration missed its target");
  return path;
}

size_t move_budget(size_t points) { return 4 * points * points + 16 * points + 16; }

ConfigPath connect(const Configuration& x, const Configuration& y) {
  const GeometricTree& tree = x.tree();
  if (!(x.tree() == y.tree())) throw InvalidInput("configurations live on different trees");
  if (canonical_form(x.merge_tree()) != canonical_form(y.merge_tree()) || x.size() != y.size()) {
    throw InvalidInput("configurations use different merge trees");
  }
  if (!is_member(x).member || !is_member(y).member) {
    throw InvalidInput("configuration violates the merge-tree constraint");
  }
  ConfigPath path(x);
  if (x == y) return path;
  const Configuration target = x.with_points(y.points());
  if (x.size() == 1) {
    path.append(PointMove{0, Arc::between(tree, x.point(0), y.point(0))});
    return path;
  }

  EdgeId e1;
  std::optional<VertexId> b;
  if (tree.has_branch_point()) {
    std::optional<EdgeId> pick;
    for (size_t g = 0; g < tree.edge_count() && !pick; ++g) {
      const Edge& ed = tree.edge(static_cast<EdgeId>(g));
      if ((tree.degree(ed.u) == 1 && tree.degree(ed.v) >= 3) || (tree.degree(ed.v) == 1 && tree.degree(ed.u) >= 3)) {
        pick = static_cast<EdgeId>(g);
      }
    }
    for (size_t g = 0; g < tree.edge_count() && !pick; ++g) {
      const Edge& ed = tree.edge(static_cast<EdgeId>(g));
      if (tree.degree(ed.u) >= 3 || tree.degree(ed.v) >= 3) pick = static_cast<EdgeId>(g);
    }
    e1 = *pick;
    b = tree.degree(tree.edge(e1).u) >= 3 ? tree.edge(e1).u : tree.edge(e1).v;
  } else {
    e1 = gather_to_edge(x).second;
  }
  const Arc orientation =
      Arc::between(tree, TreePoint::at_vertex(tree.edge(e1).u), TreePoint::at_vertex(tree.edge(e1).v));

  auto [gx, ex] = gather_to_edge(x, e1);
  auto [gy, ey] = gather_to_edge(target, e1);
  path.append(gx);
  ChiralStructure goal = chiral_structure(gy.end(), orientation);
  if (chiral_structure(path.end(), orientation) != goal) {
    if (!b) throw NoPathError("the tree is an interval and the configurations are in different orders");
    path.append(star_reconfigure(path.end(), e1, *b, orientation, goal));
  }
  path.append(line_travel(path.end(), gy.end(), orientation));
  path.append(gy.reversed());
  if (path.size() > move_budget(x.size())) {
    throw InternalError("connect used " + std::to_string(path.size()) + " moves, over the budget of " +
                        std::to_string(move_budget(x.size())));
  }
  return path;
}

}  // namespace fibertree
