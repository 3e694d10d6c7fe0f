#include <doctest.h>

#include <set>

#include "fibertree/errors.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace fibertree;
using support::share;
using support::vertex;

namespace {

std::shared_ptr<const CellularMergeTree> share_mt(CellularMergeTree t) {
  return std::make_shared<const CellularMergeTree>(std::move(t));
}

CellularMergeTree cherry() {
  MergeTreeBuilder m;
  int a = m.leaf(0), b = m.leaf(1);
  m.merge(2, {a, b});
  return m.build();
}

// l1, l2 merge first (v1), then l3 joins (v2), then l4 (v3).
CellularMergeTree caterpillar(int leaves) {
  MergeTreeBuilder m;
  int top = m.leaf(0);
  for (int k = 1; k < leaves; ++k) {
    int l = m.leaf(k);
    top = m.merge(leaves + k, {top, l});
  }
  return m.build();
}

// (l1 l2) and (l3 l4 l5) subtrees joined at the root.
CellularMergeTree two_blocks() {
  MergeTreeBuilder m;
  int a = m.leaf(0), b = m.leaf(1), c = m.leaf(2), d = m.leaf(3), e = m.leaf(4);
  int ab = m.merge(5, {a, b});
  int cd = m.merge(6, {c, d});
  int cde = m.merge(7, {cd, e});
  m.merge(8, {ab, cde});
  return m.build();
}

std::vector<TreePoint> along_edge(const GeometricTree& x, EdgeId e, const std::vector<Rational>& ts) {
  std::vector<TreePoint> out;
  for (const auto& t : ts) out.push_back(TreePoint::on_edge(x, e, t));
  return out;
}

void check_audited(const ConfigPath& path) {
  AuditReport r = audit_path(path);
  CHECK_MESSAGE(r.ok, r.failure);
  CHECK(r.checked > 0);
}

}  // namespace

TEST_CASE("node hulls") {
  auto star = share(star_tree(3));
  auto t = share_mt(cherry());
  Configuration x(star, t, {vertex(*star, "a"), vertex(*star, "b")});
  CHECK(node_hull(x, t->leaves()[0]) == TreeSubset::point(*star, vertex(*star, "a")));
  CHECK(node_hull(x, t->root()) == TreeSubset::of_arc(*star, Arc::between(*star, vertex(*star, "a"), vertex(*star, "b"))));
}

TEST_CASE("membership examples") {
  auto star = share(star_tree(3));
  Rng rng(83);
  auto two = share_mt(cherry());
  for (int trial = 0; trial < 50; ++trial) {
    TreePoint p = support::grid_point(rng, *star), q = support::grid_point(rng, *star);
    if (p == q) continue;
    CHECK(is_member(Configuration(star, two, {p, q})).member);
  }
  auto cat = share_mt(caterpillar(3));
  auto e = along_edge(*star, 0, {Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  Membership bad = is_member(Configuration(star, cat, {e[0], e[2], e[1]}));
  CHECK_FALSE(bad.member);
  REQUIRE(bad.witness.has_value());
  std::set<std::string> names{cat->node(bad.witness->first).name, cat->node(bad.witness->second).name};
  CHECK(names == std::set<std::string>{"v1", "l3"});
  CHECK(is_member(Configuration(star, cat, {e[0], e[1], e[2]})).member);
  CHECK_THROWS_AS(is_member(Configuration(star, cat, {e[0], e[0], e[2]})), InvalidInput);
  CHECK_THROWS_AS(Configuration(star, cat, {e[0], e[1]}), InvalidInput);
}

TEST_CASE("membership equals the all-pairs definition") {
  Rng rng(89);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = share(random_tree(rng, 5));
    auto trees = enumerate_merge_trees(random_generic_barcode(rng, 4));
    auto t = share_mt(trees[static_cast<size_t>(trial) % trees.size()]);
    std::vector<TreePoint> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(support::grid_point(rng, *x, 4));
    std::vector<TreePoint> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    Configuration c(x, t, pts);
    auto hulls = all_node_hulls(c);
    bool expected = true;
    for (size_t a = 0; a < t->size(); ++a) {
      for (size_t b = 0; b < t->size(); ++b) {
        bool comparable = t->is_ancestor(static_cast<int>(a), static_cast<int>(b)) ||
                          t->is_ancestor(static_cast<int>(b), static_cast<int>(a));
        if (!comparable && intersects(hulls[a], hulls[b])) expected = false;
      }
    }
    CHECK(is_member(c).member == expected);
  }
}

TEST_CASE("chirality along an arc") {
  auto unit = share(path_tree(1));
  auto two = share_mt(cherry());
  Arc forward = Arc::between(*unit, TreePoint::at_vertex(0), TreePoint::at_vertex(1));
  Configuration x(unit, two, along_edge(*unit, 0, {Rational(1, 3), Rational(2, 3)}));
  ChiralStructure c = chiral_structure(x, forward);
  CHECK(c.children[static_cast<size_t>(two->root())] == std::pair<int, int>{two->leaves()[0], two->leaves()[1]});
  ChiralStructure r = chiral_structure(x, forward.reversed());
  CHECK(r.children[static_cast<size_t>(two->root())] == std::pair<int, int>{two->leaves()[1], two->leaves()[0]});

  auto line = share(path_tree(1, 8));
  auto cat = share_mt(caterpillar(4));
  Arc arc = Arc::between(*line, TreePoint::at_vertex(0), TreePoint::at_vertex(1));
  // leaf order along the arc: 2, 1, 3, 4
  Configuration y(line, cat, along_edge(*line, 0, {Rational(2, 5), Rational(1, 5), Rational(3, 5), Rational(4, 5)}));
  ChiralStructure cy = chiral_structure(y, arc);
  std::vector<Rational> pos;
  for (const auto& p : y.points()) pos.push_back(*arc.locate(*line, p));
  auto left = oracle::left_children(*cat, pos);
  for (int v : cat->internal_nodes()) CHECK(cy.children[static_cast<size_t>(v)].first == left[static_cast<size_t>(v)]);
}

TEST_CASE("chirality matches the descendant scan on random lines") {
  Rng rng(97);
  auto line = share(path_tree(3));
  Arc arc = Arc::between(*line, TreePoint::at_vertex(0), TreePoint::at_vertex(3));
  for (int trial = 0; trial < 40; ++trial) {
    auto trees = enumerate_merge_trees(random_generic_barcode(rng, 5));
    auto t = share_mt(trees[static_cast<size_t>(trial) % trees.size()]);
    Configuration x(line, t, random_configuration(rng, *line, *t));
    std::vector<Rational> pos;
    for (const auto& p : x.points()) pos.push_back(*arc.locate(*line, p));
    ChiralStructure c = chiral_structure(x, arc);
    auto left = oracle::left_children(*t, pos);
    for (int v : t->internal_nodes()) CHECK(c.children[static_cast<size_t>(v)].first == left[static_cast<size_t>(v)]);
  }
}

TEST_CASE("gathering into one edge") {
  auto star = share(star_tree(3));
  auto cat = share_mt(caterpillar(3));
  Configuration inside(star, cat, along_edge(*star, 1, {Rational(1, 4), Rational(1, 2), Rational(3, 4)}));
  auto [none, e0] = gather_to_edge(inside);
  CHECK(none.empty());
  CHECK(e0 == 1);

  MergeTreeBuilder m;
  m.leaf(0);
  Configuration lone(star, share_mt(m.build()), {vertex(*star, "c")});
  auto [step, e1] = gather_to_edge(lone);
  CHECK(step.size() == 1);
  CHECK_FALSE(step.end().point(0).is_vertex());
  CHECK(step.end().point(0).edge() == e1);

  // four points on two branches, gathered into the third
  auto four = share_mt(caterpillar(4));
  Configuration spread(star, four,
                       {TreePoint::on_edge(*star, 0, Rational(3, 4)), TreePoint::on_edge(*star, 0, Rational(1, 4)),
                        TreePoint::on_edge(*star, 1, Rational(1, 2)), TreePoint::on_edge(*star, 1, Rational(3, 4))});
  REQUIRE(is_member(spread).member);
  auto [path, target] = gather_to_edge(spread, 2);
  CHECK(target == 2);
  for (const auto& p : path.end().points()) {
    CHECK_FALSE(p.is_vertex());
    CHECK(p.edge() == 2);
  }
  check_audited(path);
}

TEST_CASE("gathering random configurations") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = share(random_tree(rng, 7));
    auto trees = enumerate_merge_trees(random_generic_barcode(rng, 4));
    auto t = share_mt(trees[static_cast<size_t>(trial) % trees.size()]);
    Configuration c(x, t, random_configuration(rng, *x, *t));
    auto [path, e] = gather_to_edge(c);
    for (const auto& p : path.end().points()) CHECK((!p.is_vertex() && p.edge() == e));
    check_audited(path);
  }
}

TEST_CASE("line travel") {
  auto unit = share(path_tree(1, 10));
  Arc arc = Arc::between(*unit, TreePoint::at_vertex(0), TreePoint::at_vertex(1));
  auto two = share_mt(cherry());
  Configuration x(unit, two, along_edge(*unit, 0, {Rational(1, 10), Rational(2, 10)}));
  CHECK(line_travel(x, x, arc).empty());
  Configuration y = x.with_points(along_edge(*unit, 0, {Rational(5, 10), Rational(9, 10)}));
  ConfigPath p = line_travel(x, y, arc);
  CHECK(p.size() == 1);
  CHECK(p.end() == y);
  CHECK_THROWS_AS(line_travel(x, x.with_points({y.point(1), y.point(0)}), arc), InvalidInput);

  Rng rng(103);
  auto five = share_mt(two_blocks());
  for (int trial = 0; trial < 10; ++trial) {
    Configuration a(unit, five, random_configuration(rng, *unit, *five));
    Configuration b(unit, five, random_configuration(rng, *unit, *five));
    if (arc_order(a, arc) != arc_order(b, arc)) continue;
    ConfigPath path = line_travel(a, b, arc);
    check_audited(path);
    for (long k = 0; k <= 100; ++k) {
      Configuration mid = configuration_at(a, path.moves().front(), Rational(k, 100));
      CHECK(is_member(mid).member);
      CHECK(arc_order(mid, arc) == arc_order(a, arc));
    }
  }
}

TEST_CASE("star reconfiguration") {
  auto star = share(star_tree(3));
  VertexId c = *star->find_vertex("c");
  Arc orientation = Arc::between(*star, TreePoint::at_vertex(star->edge(0).u), TreePoint::at_vertex(star->edge(0).v));

  auto two = share_mt(cherry());
  Configuration x(star, two, along_edge(*star, 0, {Rational(1, 3), Rational(2, 3)}));
  ChiralStructure now = chiral_structure(x, orientation);
  CHECK(star_reconfigure(x, 0, c, orientation, now).empty());
  ChiralStructure swapped = now;
  std::swap(swapped.children[static_cast<size_t>(two->root())].first, swapped.children[static_cast<size_t>(two->root())].second);
  ConfigPath swap = star_reconfigure(x, 0, c, orientation, swapped);
  CHECK(swap.size() == 4);
  CHECK(chiral_structure(swap.end(), orientation) == swapped);
  check_audited(swap);

  // invert the root of a five-leaf tree: the right block must come first
  auto five = share_mt(two_blocks());
  Configuration y(star, five, along_edge(*star, 0, {Rational(1, 6), Rational(2, 6), Rational(3, 6), Rational(4, 6), Rational(5, 6)}));
  REQUIRE(is_member(y).member);
  ChiralStructure target = chiral_structure(y, orientation);
  auto& root = target.children[static_cast<size_t>(five->root())];
  std::swap(root.first, root.second);
  ConfigPath path = star_reconfigure(y, 0, c, orientation, target);
  check_audited(path);
  CHECK(chiral_structure(path.end(), orientation) == target);
  auto order = arc_order(path.end(), orientation);
  CHECK(order == std::vector<int>{2, 3, 4, 0, 1});
}

TEST_CASE("star reconfiguration reaches every chirality") {
  auto star = share(star_tree(3));
  VertexId c = *star->find_vertex("c");
  Arc orientation = Arc::between(*star, TreePoint::at_vertex(star->edge(0).u), TreePoint::at_vertex(star->edge(0).v));
  auto five = share_mt(two_blocks());
  Configuration y(star, five, along_edge(*star, 0, {Rational(1, 6), Rational(2, 6), Rational(3, 6), Rational(4, 6), Rational(5, 6)}));
  ChiralStructure base = chiral_structure(y, orientation);
  const auto& internal = five->internal_nodes();
  for (unsigned mask = 0; mask < (1u << internal.size()); ++mask) {
    ChiralStructure target = base;
    for (size_t k = 0; k < internal.size(); ++k) {
      if (mask & (1u << k)) {
        auto& pr = target.children[static_cast<size_t>(internal[k])];
        std::swap(pr.first, pr.second);
      }
    }
    ConfigPath path = star_reconfigure(y, 0, c, orientation, target);
    CHECK(chiral_structure(path.end(), orientation) == target);
    check_audited(path);
  }
}

TEST_CASE("connect examples") {
  auto star = share(star_tree(3));
  auto two = share_mt(cherry());
  Configuration x(star, two, {TreePoint::on_edge(*star, 0, Rational(1, 2)), TreePoint::on_edge(*star, 1, Rational(1, 2))});
  CHECK(connect(x, x).empty());
  Configuration y = x.with_points({x.point(1), x.point(0)});
  ConfigPath p = connect(x, y);
  CHECK(p.end() == y);
  check_audited(p);
  CHECK(p.size() <= move_budget(2));

  MergeTreeBuilder m;
  m.leaf(0);
  auto one = share_mt(m.build());
  Configuration a(star, one, {vertex(*star, "a")});
  Configuration b(star, one, {vertex(*star, "b")});
  ConfigPath q = connect(a, b);
  CHECK(q.end() == b);
  check_audited(q);
}

TEST_CASE("connect on an interval") {
  auto line = share(path_tree(2));
  auto two = share_mt(cherry());
  Configuration x(line, two, {TreePoint::on_edge(*line, 0, Rational(1, 2)), TreePoint::on_edge(*line, 1, Rational(1, 2))});
  Configuration same(line, two, {TreePoint::on_edge(*line, 0, Rational(1, 4)), TreePoint::on_edge(*line, 1, Rational(3, 4))});
  ConfigPath ok = connect(x, same);
  CHECK(ok.end() == same);
  check_audited(ok);
  CHECK_THROWS_AS(connect(x, x.with_points({x.point(1), x.point(0)})), NoPathError);
}

TEST_CASE("connect random pairs with audits") {
  Rng rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = share(random_branching_tree(rng, 8));
    int n = 1 + trial % 4;
    auto trees = enumerate_merge_trees(random_generic_barcode(rng, n));
    auto t = share_mt(trees[static_cast<size_t>(trial) % trees.size()]);
    Configuration a(x, t, random_configuration(rng, *x, *t));
    Configuration b(x, t, random_configuration(rng, *x, *t));
    ConfigPath p = connect(a, b);
    CHECK(p.start() == a);
    CHECK(p.end() == b);
    CHECK(p.size() <= move_budget(static_cast<size_t>(n)));
    check_audited(p);
    ConfigPath back = connect(b, a);
    CHECK(back.end() == a);
    ConfigPath rev = p.reversed();
    CHECK(rev.start() == b);
    CHECK(rev.end() == a);
    check_audited(rev);
  }
}

TEST_CASE("paths compose only end to start") {
  auto star = share(star_tree(3));
  auto two = share_mt(cherry());
  Configuration x(star, two, {TreePoint::on_edge(*star, 0, Rational(1, 2)), TreePoint::on_edge(*star, 1, Rational(1, 2))});
  Configuration y = x.with_points({TreePoint::on_edge(*star, 0, Rational(1, 4)), x.point(1)});
  ConfigPath p(x);
  p.append(PointMove{0, Arc::between(*star, x.point(0), y.point(0))});
  CHECK(p.end() == y);
  CHECK_THROWS_AS(p.append(PointMove{0, Arc::between(*star, x.point(0), y.point(0))}), InternalError);
  ConfigPath other(x);
  CHECK_THROWS_AS(p.append(other), InternalError);
  CHECK(waypoints(p).size() >= 2);
}
