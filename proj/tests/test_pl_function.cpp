#include <doctest.h>

#include <set>

#include "fibertree/errors.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace fibertree;
using support::on_path;
using support::share;

TEST_CASE("constructor validates breakpoints") {
  auto x = share(path_tree(1));
  CHECK_THROWS_AS(PLFunction(x, {0}), InvalidInput);
  CHECK_THROWS_AS(PLFunction(x, {0, 0}, {{{0, 1}}}), InvalidInput);
  CHECK_THROWS_AS(PLFunction(x, {0, 0}, {{{Rational(1, 2), 1}, {Rational(1, 4), 1}}}), InvalidInput);
  CHECK_THROWS_AS(PLFunction(x, {0, 0}, {{}, {}}), InvalidInput);
}

TEST_CASE("evaluate interpolates linearly") {
  auto x = share(path_tree(1));
  PLFunction f(x, {0, 2});
  CHECK(f.evaluate(TreePoint::at_vertex(1)) == 2);
  CHECK(f.evaluate(TreePoint::on_edge(*x, 0, Rational(1, 2))) == 1);
  PLFunction g(x, {0, 0}, {{{Rational(1, 2), 5}}});
  CHECK(g.evaluate(TreePoint::on_edge(*x, 0, Rational(1, 4))) == Rational(5, 2));
  CHECK(g.evaluate(TreePoint::on_edge(*x, 0, Rational(3, 4))) == Rational(5, 2));
}

TEST_CASE("local minima examples") {
  auto star = share(star_tree(3));
  PLFunction c(star, {1, 1, 1, 1});
  auto m = local_minima(c);
  REQUIRE(m.size() == 1);
  CHECK(m[0].region == TreeSubset::whole(*star));
  CHECK(m[0].value == 1);

  auto inc = local_minima(on_path({0, 1}));
  REQUIRE(inc.size() == 1);
  CHECK(inc[0].region == TreeSubset::point(path_tree(1), TreePoint::at_vertex(0)));

  PLFunction f = on_path({0, 2, 1, 3});
  auto two = local_minima(f);
  REQUIRE(two.size() == 2);
  CHECK(two[0].value == 0);
  CHECK(two[1].value == 1);
  CHECK(two[0].region.contains(TreePoint::at_vertex(0)));
  CHECK(two[1].region.contains(TreePoint::at_vertex(2)));
}

TEST_CASE("plateau minima are whole regions") {
  PLFunction f = on_path({3, 1, 1, 1, 2});
  auto m = local_minima(f);
  REQUIRE(m.size() == 1);
  CHECK(m[0].region.total_length(f.tree()) == 2);
  PLFunction shelf = on_path({0, 1, 1, 2});
  CHECK(local_minima(shelf).size() == 1);
}

TEST_CASE("max on path") {
  PLFunction c = on_path({4, 4, 4});
  TreeSubset all = TreeSubset::whole(c.tree());
  PathMaximum pm = max_on_path(c, all);
  CHECK(pm.value == 4);
  REQUIRE(pm.regions.size() == 1);
  CHECK(pm.regions[0] == all);

  PLFunction f = on_path({0, 2, 1});
  pm = max_on_path(f, TreeSubset::whole(f.tree()));
  CHECK(pm.value == 2);
  REQUIRE(pm.regions.size() == 1);
  CHECK(pm.regions[0] == TreeSubset::point(f.tree(), TreePoint::at_vertex(1)));

  PLFunction g = on_path({0, 2, 2, 1});
  pm = max_on_path(g, TreeSubset::whole(g.tree()));
  CHECK(pm.value == 2);
  REQUIRE(pm.regions.size() == 1);
  CHECK(pm.regions[0] == TreeSubset::from_parts(g.tree(), {1, 2}, {{1, 0, 1}}));

  PLFunction h = on_path({0, 2, 1, 2, 0});
  pm = max_on_path(h, TreeSubset::whole(h.tree()));
  CHECK(pm.regions.size() == 2);
}

TEST_CASE("sublevel components examples") {
  PLFunction f = on_path({0, 2, 1});
  CHECK(sublevel_components(f, -1).empty());
  auto all = sublevel_components(f, 2);
  REQUIRE(all.size() == 1);
  CHECK(all[0] == TreeSubset::whole(f.tree()));
  auto two = sublevel_components(f, 1);
  REQUIRE(two.size() == 2);
  CHECK(two[0].contains(TreePoint::at_vertex(0)));
  CHECK(two[1].contains(TreePoint::at_vertex(2)));
  CHECK(two[0].contains(TreePoint::on_edge(f.tree(), 0, Rational(1, 2))));
  CHECK_FALSE(two[0].contains(TreePoint::on_edge(f.tree(), 0, Rational(3, 4))));
}

TEST_CASE("random functions: sublevel sets, minima and sweep oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = share(random_tree(rng, 6));
    PLFunction f = random_pl_function(rng, x, 2);
    auto minima = local_minima(f);
    oracle::SweepResult sweep = oracle::sublevel_sweep(f);
    std::multiset<Rational> lib, ref(sweep.minimum_values.begin(), sweep.minimum_values.end());
    for (const auto& m : minima) lib.insert(m.value);
    CHECK(lib == ref);

    // minima: disjoint, constant on region
    for (size_t i = 0; i < minima.size(); ++i) {
      for (const TreePoint& p : minima[i].region.boundary_candidates(*x)) CHECK(f.evaluate(p) == minima[i].value);
      for (size_t j = i + 1; j < minima.size(); ++j) CHECK(subsets_disjoint(minima[i].region, minima[j].region));
    }

    auto grid = support::all_grid_points(*x, 16);
    std::vector<TreeSubset> previous;
    for (long k = -1; k <= 33; ++k) {
      Rational t(k, 4);
      auto comps = sublevel_components(f, t);
      CHECK(comps.size() <= minima.size());
      for (const TreePoint& p : grid) {
        int owners = 0;
        for (const auto& c : comps) owners += c.contains(p) ? 1 : 0;
        CHECK(owners == (f.evaluate(p) <= t ? 1 : 0));
      }
      for (const auto& c : previous) {
        int holders = 0;
        for (const auto& d : comps) holders += is_subset(c, d) ? 1 : 0;
        CHECK(holders == 1);
      }
      previous = comps;
    }
  }
}

TEST_CASE("bars born at a value match minima at that value") {
  Rng rng(23);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto x = share(random_tree(rng, 6));
    PLFunction f = random_pl_function(rng, x, 2);
    Barcode d;
    try {
      d = barcode_of(compute_merge_tree(f).tree);
    } catch (const AmbiguityError&) {
      continue;
    }
    ++checked;
    std::multiset<Rational> births, values;
    for (const auto& b : d.bars()) births.insert(b.birth);
    for (const auto& m : local_minima(f)) values.insert(m.value);
    CHECK(births == values);
  }
  CHECK(checked > 20);
}

TEST_CASE("sup distance is an exact metric") {
  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = share(random_tree(rng, 5));
    PLFunction f = random_pl_function(rng, x, 2);
    PLFunction g = random_pl_function(rng, x, 2);
    PLFunction h = random_pl_function(rng, x, 2);
    Rational fg = sup_distance(f, g);
    CHECK(fg == sup_distance(g, f));
    CHECK(sup_distance(f, h) <= fg + sup_distance(g, h));
    CHECK(sup_distance(f, f) == 0);
    CHECK(sup_distance(f, f.simplified()) == 0);
    Rational seen = 0;
    for (const TreePoint& p : support::all_grid_points(*x, 8)) {
      Rational gap = abs(Rational(f.evaluate(p) - g.evaluate(p)));
      CHECK(gap <= fg);
      if (gap > seen) seen = gap;
    }
    // random knots sit on the 1/8 grid, so the grid sees the maximum
    CHECK(seen == fg);
  }
}

TEST_CASE("add and simplified agree pointwise") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = share(random_tree(rng, 5));
    PLFunction f = random_pl_function(rng, x, 3);
    PLFunction g = random_pl_function(rng, x, 3);
    PLFunction s = add(f, g);
    PLFunction fs = f.simplified();
    for (const TreePoint& p : support::all_grid_points(*x, 16)) {
      CHECK(s.evaluate(p) == f.evaluate(p) + g.evaluate(p));
      CHECK(fs.evaluate(p) == f.evaluate(p));
    }
  }
  PLFunction lin = PLFunction(share(path_tree(1)), {0, 2}, {{{Rational(1, 2), 1}}});
  CHECK(lin.simplified().breakpoints(0).empty());
}
