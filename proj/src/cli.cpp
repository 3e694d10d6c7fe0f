#include "fibertree/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "fibertree/discrete_conf.hpp"
#include "fibertree/errors.hpp"
#include "fibertree/generators.hpp"
#include "fibertree/io.hpp"
#include "fibertree/parallel.hpp"

namespace fibertree::cli {

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct Options {
  std::optional<int> decimals;
  std::uint64_t seed = 0;
  std::string output;
};

class Context {
 public:
  Context(const Options& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {}

  NumberFormat fmt() const { return NumberFormat{opts_.decimals}; }
  std::ostream& err() const { return err_; }

  std::uint64_t seed() const {
    if (const char* env = std::getenv("FIBERTREE_SEED"); env && *env) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw InvalidInput("FIBERTREE_SEED is not an unsigned integer");
      }
    }
    return opts_.seed;
  }

  void emit(const std::string& text) const {
    if (opts_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(opts_.output);
    if (!file) throw InvalidInput("cannot write " + opts_.output);
    file << text;
  }

  int decide(bool value) const {
    emit(value ? "true\n" : "false\n");
    return value ? kTrue : kFalse;
  }

 private:
  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
};

Json matrix_json(const std::vector<std::vector<Rational>>& m, const NumberFormat& fmt) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Rational& q : row) r.push_back(fmt(q));
    rows.push_back(r);
  }
  return rows;
}

std::string optional_number(const std::optional<Rational>& q, const NumberFormat& fmt) {
  return q ? fmt(*q) : std::string("inf");
}

// Shared tree and merge tree of x, points of y.
Configuration align(const Configuration& x, const Configuration& y) {
  if (!(x.tree() == y.tree())) throw InvalidInput("configurations live on different trees");
  if (canonical_form(x.merge_tree()) != canonical_form(y.merge_tree()) ||
      induced_matrix(x.merge_tree()) != induced_matrix(y.merge_tree())) {
    throw InvalidInput("configurations use different labelled merge trees");
  }
  return x.with_points(y.points());
}

VertexId vertex_or_throw(const GeometricTree& tree, const std::string& name) {
  auto v = tree.find_vertex(name);
  if (!v) throw InvalidInput("unknown vertex '" + name + "'");
  return *v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Merge trees, barcodes and their fibers on geometric trees", "fibertree"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--decimal", opts.decimals, "Print numbers as decimals with this many digits")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opts.seed, "Random seed (FIBERTREE_SEED overrides)");
  app.add_option("-o,--output", opts.output, "Write the result to a file instead of stdout");

  Context ctx(opts, out, err);
  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> fn) { sub->callback([&action, fn] { action = fn; }); };

  // ---- mt
  auto* mt = app.add_subcommand("mt", "Merge trees")->require_subcommand(1);
  std::string function_path, tree_a, tree_b, merge_tree_path, against_path;
  int bound = 0;

  auto* mt_compute = mt->add_subcommand("compute", "Merge tree of a PL function");
  mt_compute->add_option("--function", function_path)->required();
  bind(mt_compute, [&] {
    MergeTreeResult r = compute_merge_tree(load_function(function_path));
    ctx.emit(dump(merge_tree_to_json(r.tree, ctx.fmt())));
    return kTrue;
  });

  auto* mt_iso = mt->add_subcommand("isomorphic", "Are two merge trees isomorphic");
  mt_iso->add_option("--a", tree_a)->required();
  mt_iso->add_option("--b", tree_b)->required();
  bind(mt_iso, [&] { return ctx.decide(is_isomorphic(load_merge_tree(tree_a), load_merge_tree(tree_b))); });

  auto* mt_matrix = mt->add_subcommand("matrix", "Induced matrix, or its distance to another tree");
  mt_matrix->add_option("--merge-tree", merge_tree_path)->required();
  mt_matrix->add_option("--against", against_path, "Second merge tree");
  mt_matrix->add_option("--bound", bound, "Largest labelling size searched with --against");
  bind(mt_matrix, [&] {
    CellularMergeTree t = load_merge_tree(merge_tree_path);
    if (against_path.empty()) {
      ctx.emit(dump(matrix_json(induced_matrix(t).entries, ctx.fmt())));
      return kTrue;
    }
    CellularMergeTree u = load_merge_tree(against_path);
    int b = std::max({bound, static_cast<int>(t.leaf_count()), static_cast<int>(u.leaf_count())});
    ctx.emit(ctx.fmt()(matrix_distance_min_over_labelings_parallel(t, u, b)) + "\n");
    return kTrue;
  });

  // ---- barcode
  auto* bc = app.add_subcommand("barcode", "Barcodes")->require_subcommand(1);
  std::string barcode_path;

  auto* bc_of = bc->add_subcommand("of", "Elder-rule barcode of a merge tree");
  bc_of->add_option("--merge-tree", merge_tree_path)->required();
  bind(bc_of, [&] {
    ctx.emit(dump(barcode_to_json(barcode_of(load_merge_tree(merge_tree_path)), ctx.fmt())));
    return kTrue;
  });

  auto* bc_generic = bc->add_subcommand("generic", "Are all endpoints distinct");
  bc_generic->add_option("--barcode", barcode_path)->required();
  bind(bc_generic, [&] { return ctx.decide(is_generic_barcode(load_barcode(barcode_path))); });

  auto* bc_deltas = bc->add_subcommand("deltas", "Minimum gaps among left and right endpoints");
  bc_deltas->add_option("--barcode", barcode_path)->required();
  bind(bc_deltas, [&] {
    SeparationThresholds s = separation_thresholds(load_barcode(barcode_path));
    Json j;
    j["delta_left"] = optional_number(s.left, ctx.fmt());
    j["delta_right"] = optional_number(s.right, ctx.fmt());
    j["min"] = optional_number(s.min(), ctx.fmt());
    ctx.emit(dump(j));
    return kTrue;
  });

  // ---- fiber
  auto* fb = app.add_subcommand("fiber", "Functions sharing a barcode")->require_subcommand(1);
  std::string tree_path, other_function_path;
  bool random_points = false;

  auto* fb_count = fb->add_subcommand("count", "Number of merge trees with the barcode");
  fb_count->add_option("--barcode", barcode_path)->required();
  bind(fb_count, [&] {
    ctx.emit(std::to_string(count_components(load_barcode(barcode_path))) + "\n");
    return kTrue;
  });

  auto* fb_enum = fb->add_subcommand("enumerate", "Every merge tree with the barcode");
  fb_enum->add_option("--barcode", barcode_path)->required();
  bind(fb_enum, [&] {
    Json arr = Json::array();
    for (const auto& t : enumerate_merge_trees_parallel(load_barcode(barcode_path))) {
      arr.push_back(merge_tree_to_json(t, ctx.fmt()));
    }
    ctx.emit(dump(arr));
    return kTrue;
  });

  auto* fb_realize = fb->add_subcommand("realize", "PL function on a tree with the given merge tree");
  fb_realize->add_option("--merge-tree", merge_tree_path)->required();
  fb_realize->add_option("--tree", tree_path)->required();
  fb_realize->add_flag("--random-points", random_points, "Place minima at a seeded random configuration");
  bind(fb_realize, [&] {
    auto tree = load_tree(tree_path);
    CellularMergeTree t = load_merge_tree(merge_tree_path);
    std::optional<std::vector<TreePoint>> pts;
    if (random_points) {
      Rng rng(ctx.seed());
      pts = random_configuration(rng, *tree, t);
    }
    ctx.emit(dump(function_to_json(realize_function(t, tree, pts), ctx.fmt())));
    return kTrue;
  });

  auto* fb_verify = fb->add_subcommand("verify", "Does the function have this merge tree");
  fb_verify->add_option("--function", function_path)->required();
  fb_verify->add_option("--merge-tree", merge_tree_path)->required();
  bind(fb_verify, [&] {
    FiberCheck c = verify_fiber_membership(load_function(function_path), load_merge_tree(merge_tree_path));
    if (!c.member) ctx.err() << c.diagnostic << "\n";
    return ctx.decide(c.member);
  });

  auto* fb_same = fb->add_subcommand("same-component", "Do two functions lie in one fiber component");
  fb_same->add_option("--f", function_path)->required();
  fb_same->add_option("--g", other_function_path)->required();
  bind(fb_same, [&] {
    return ctx.decide(same_component(load_function(function_path), load_function(other_function_path)));
  });

  // ---- conf
  auto* cf = app.add_subcommand("conf", "Configuration spaces")->require_subcommand(1);
  std::string config_path, target_path, csv_path, arc_from, arc_to;
  bool audit = false;
  int pieces = 2;

  auto* cf_check = cf->add_subcommand("check", "Is the configuration admissible");
  cf_check->add_option("--configuration", config_path)->required();
  bind(cf_check, [&] {
    Configuration x = load_configuration(config_path);
    Membership m = is_member(x);
    if (!m.member) {
      ctx.err() << "hulls of '" << x.merge_tree().node(m.witness->first).name << "' and '"
                << x.merge_tree().node(m.witness->second).name << "' meet\n";
    }
    return ctx.decide(m.member);
  });

  auto* cf_chiral = cf->add_subcommand("chirality", "Left and right children along an arc");
  cf_chiral->add_option("--configuration", config_path)->required();
  cf_chiral->add_option("--from", arc_from, "Vertex where the arc starts")->required();
  cf_chiral->add_option("--to", arc_to, "Vertex where the arc ends")->required();
  bind(cf_chiral, [&] {
    Configuration x = load_configuration(config_path);
    const GeometricTree& tree = x.tree();
    Arc arc = Arc::between(tree, TreePoint::at_vertex(vertex_or_throw(tree, arc_from)),
                           TreePoint::at_vertex(vertex_or_throw(tree, arc_to)));
    ChiralStructure c = chiral_structure(x, arc);
    const CellularMergeTree& t = x.merge_tree();
    Json j = Json::object();
    for (int v : t.internal_nodes()) {
      auto [l, r] = c.children[static_cast<size_t>(v)];
      j[t.node(v).name] = {{"left", t.node(l).name}, {"right", t.node(r).name}};
    }
    ctx.emit(dump(j));
    return kTrue;
  });

  auto* cf_connect = cf->add_subcommand("connect", "Path between two configurations");
  cf_connect->add_option("--from", config_path)->required();
  cf_connect->add_option("--to", target_path)->required();
  cf_connect->add_flag("--audit", audit, "Check every waypoint and fail on a violation");
  cf_connect->add_option("--csv", csv_path, "Also write plot data (time, point, edge, t)");
  bind(cf_connect, [&] {
    Configuration x = load_configuration(config_path);
    Configuration y = align(x, load_configuration(target_path));
    ConfigPath path = connect(x, y);
    if (audit) {
      AuditReport r = audit_path_parallel(path);
      if (!r.ok) throw InternalError("audit failed: " + r.failure);
      ctx.err() << "audit ok: " << r.checked << " waypoints\n";
    }
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path);
      if (!csv) throw InvalidInput("cannot write " + csv_path);
      csv << path_to_csv(path, ctx.fmt());
    }
    ctx.emit(dump(path_to_json(path, ctx.fmt())));
    return kTrue;
  });

  auto* cf_betti = cf->add_subcommand("betti1", "First Betti number of the two-point discrete model");
  cf_betti->add_option("--tree", tree_path)->required();
  cf_betti->add_option("--pieces", pieces, "Subdivision of every edge")->check(CLI::PositiveNumber);
  bind(cf_betti, [&] {
    ctx.emit(std::to_string(discrete_conf2_betti1(*load_tree(tree_path), pieces)) + "\n");
    return kTrue;
  });

  // ---- dist
  auto* ds = app.add_subcommand("dist", "Distances")->require_subcommand(1);
  std::vector<std::string> function_paths;
  auto* ds_matrix = ds->add_subcommand("matrix", "Pairwise sup-norm distances of PL functions");
  ds_matrix->add_option("--function", function_paths)->required();
  bind(ds_matrix, [&] {
    std::vector<PLFunction> fs;
    for (const auto& p : function_paths) fs.push_back(load_function(p));
    ctx.emit(dump(matrix_json(pairwise_sup_distances_parallel(fs), ctx.fmt())));
    return kTrue;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kError;
}

}  // namespace fibertree::cli
