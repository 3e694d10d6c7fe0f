#include "fibertree/discrete_conf.hpp"

#include <cstdint>
#include <map>

#include "fibertree/errors.hpp"

namespace fibertree {

long gf2_rank(const std::vector<std::vector<int>>& rows, int columns) {
  const size_t words = static_cast<size_t>(columns + 63) / 64;
  std::vector<std::vector<std::uint64_t>> basis;  // pivot column -> reduced row, kept sparse by pivot
  std::map<int, size_t> pivot_row;
  long rank = 0;
  for (const auto& row : rows) {
    std::vector<std::uint64_t> bits(words, 0);
    for (int c : row) bits[c / 64] ^= std::uint64_t{1} << (c % 64);
    while (true) {
      int lead = -1;
      for (size_t w = 0; w < words && lead < 0; ++w) {
        if (bits[w]) lead = static_cast<int>(w * 64) + __builtin_ctzll(bits[w]);
      }
      if (lead < 0) break;
      auto it = pivot_row.find(lead);
      if (it == pivot_row.end()) {
        pivot_row[lead] = basis.size();
        basis.push_back(std::move(bits));
        ++rank;
        break;
      }
      const auto& other = basis[it->second];
      for (size_t w = 0; w < words; ++w) bits[w] ^= other[w];
    }
  }
  return rank;
}

namespace {

// Cells of the refined graph: vertices 0..V-1, then edges V..V+E-1.
struct GraphCells {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int dim(int c) const { return c < vertices ? 0 : 1; }
  // vertices in the closure of a cell
  std::vector<int> closure(int c) const {
    if (c < vertices) return {c};
    return {edges[c - vertices].first, edges[c - vertices].second};
  }
  std::vector<int> boundary(int c) const {
    if (c < vertices) return {};
    return closure(c);
  }
  int count() const { return vertices + static_cast<int>(edges.size()); }
};

bool closures_disjoint(const GraphCells& g, int a, int b) {
  for (int x : g.closure(a)) {
    for (int y : g.closure(b)) {
      if (x == y) return false;
    }
  }
  return true;
}

}  // namespace

BettiNumbers discrete_conf_betti(const GeometricTree& tree, int points, int pieces) {
  if (points != 1 && points != 2) throw InvalidInput("discrete configuration complex supports 1 or 2 points");
  Subdivision sub(tree, pieces);
  const GeometricTree& fine = sub.tree();
  GraphCells g;
  g.vertices = static_cast<int>(fine.vertex_count());
  for (size_t e = 0; e < fine.edge_count(); ++e) {
    g.edges.emplace_back(fine.edge(static_cast<EdgeId>(e)).u, fine.edge(static_cast<EdgeId>(e)).v);
  }

  // cells by dimension, each a tuple of graph cells
  std::vector<std::vector<std::vector<int>>> cells(3);
  if (points == 1) {
    for (int c = 0; c < g.count(); ++c) cells[g.dim(c)].push_back({c});
  } else {
    for (int a = 0; a < g.count(); ++a) {
      for (int b = 0; b < g.count(); ++b) {
        if (a != b && closures_disjoint(g, a, b)) cells[g.dim(a) + g.dim(b)].push_back({a, b});
      }
    }
  }
  std::vector<std::map<std::vector<int>, int>> index(3);
  for (int d = 0; d < 3; ++d) {
    for (size_t i = 0; i < cells[d].size(); ++i) index[d][cells[d][i]] = static_cast<int>(i);
  }
  // boundary of each d-cell as a row of (d-1)-cell indices
  auto boundary_rows = [&](int d) {
    std::vector<std::vector<int>> rows;
    for (const auto& cell : cells[d]) {
      std::vector<int> row;
      for (size_t slot = 0; slot < cell.size(); ++slot) {
        for (int face : g.boundary(cell[slot])) {
          std::vector<int> f = cell;
          f[slot] = face;
          row.push_back(index[d - 1].at(f));
        }
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const long c0 = static_cast<long>(cells[0].size());
  const long c1 = static_cast<long>(cells[1].size());
  const long c2 = static_cast<long>(cells[2].size());
  long r1 = gf2_rank(boundary_rows(1), static_cast<int>(c0));
  long r2 = c2 ? gf2_rank(boundary_rows(2), static_cast<int>(c1)) : 0;
  return {c0 - r1, c1 - r1 - r2, c2 - r2};
}

long discrete_conf2_betti1(const GeometricTree& tree, int pieces) { return discrete_conf_betti(tree, 2, pieces).b1; }

}  // namespace fibertree
