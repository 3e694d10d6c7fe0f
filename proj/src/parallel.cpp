#include "fibertree/parallel.hpp"

#include <algorithm>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fibertree/errors.hpp"

namespace fibertree {

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<CellularMergeTree> enumerate_merge_trees_parallel(const Barcode& d) {
  const std::uint64_t total = count_components(d);
  std::vector<std::optional<CellularMergeTree>> slots(total);
  std::vector<std::string> keys(total);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(total); ++i) {
    slots[i].emplace(merge_tree_for_choice(d, static_cast<std::uint64_t>(i)));
    keys[i] = canonical_form(*slots[i]);
  }
  std::vector<size_t> order(total);
  for (size_t i = 0; i < total; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });
  std::vector<CellularMergeTree> out;
  out.reserve(total);
  for (size_t i : order) out.push_back(std::move(*slots[i]));
  return out;
}

AuditReport audit_path_parallel(const ConfigPath& path) {
  // flatten (move, time) samples first; the checks are independent
  struct Sample {
    size_t move;
    Rational tau;
    Configuration config;
  };
  std::vector<Sample> samples{{0, 0, path.start()}};
  Configuration cur = path.start();
  for (size_t k = 0; k < path.moves().size(); ++k) {
    const Move& m = path.moves()[k];
    for (const Rational& tau : audit_times(cur, m)) {
      if (tau != 0) samples.push_back({k + 1, tau, configuration_at(cur, m, tau)});
    }
    cur = apply_move(cur, m);
  }
  std::vector<std::string> failures(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(samples.size()); ++i) {
    const Sample& s = samples[i];
    std::string where = "move " + std::to_string(s.move) + " at time " + to_string(s.tau);
    auto pts = s.config.points();
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
      failures[i] = "points collide (" + where + ")";
      continue;
    }
    Membership m = is_member(s.config);
    if (!m.member) {
      failures[i] = "hulls of '" + s.config.merge_tree().node(m.witness->first).name + "' and '" +
                    s.config.merge_tree().node(m.witness->second).name + "' meet (" + where + ")";
    }
  }
  AuditReport report;
  for (size_t i = 0; i < samples.size(); ++i) {
    ++report.checked;
    if (!failures[i].empty()) {
      report.ok = false;
      report.failure = failures[i];
      break;
    }
  }
  return report;
}

Rational matrix_distance_min_over_labelings_parallel(const CellularMergeTree& t1, const CellularMergeTree& t2,
                                                     int bound_n) {
  const int n1 = static_cast<int>(t1.leaf_count());
  const int n2 = static_cast<int>(t2.leaf_count());
  const int lo = std::max(n1, n2);
  if (bound_n < lo) throw InvalidInput("label bound smaller than the leaf counts");
  std::optional<Rational> best;
  for (int size = lo; size <= bound_n; ++size) {
    auto firsts = sorted_surjections(size, n1);
    auto seconds = all_surjections(size, n2);
    std::vector<std::optional<Rational>> per_first(firsts.size());
#pragma omp parallel for schedule(dynamic)
    for (long long a = 0; a < static_cast<long long>(firsts.size()); ++a) {
      for (const auto& b : seconds) {
        Rational d = matrix_distance(t1, t2, firsts[a], b);
        if (!per_first[a] || d < *per_first[a]) per_first[a] = d;
      }
    }
    for (const auto& d : per_first) {
      if (d && (!best || *d < *best)) best = d;
    }
  }
  return *best;
}

std::vector<std::vector<Rational>> pairwise_sup_distances(const std::vector<PLFunction>& fs) {
  const size_t n = fs.size();
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) out[i][j] = out[j][i] = sup_distance(fs[i], fs[j]);
  }
  return out;
}

std::vector<std::vector<Rational>> pairwise_sup_distances_parallel(const std::vector<PLFunction>& fs) {
  const size_t n = fs.size();
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    for (size_t j = static_cast<size_t>(i) + 1; j < n; ++j) out[i][j] = sup_distance(fs[i], fs[j]);
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) out[j][i] = out[i][j];
  }
  return out;
}

}  // namespace fibertree
