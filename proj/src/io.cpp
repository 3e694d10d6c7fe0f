#include "fibertree/io.hpp"

#include <fstream>
#include <sstream>

#include "fibertree/errors.hpp"

namespace fibertree {

namespace fs = std::filesystem;

ParseError::ParseError(std::string file, int line, std::string field, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + (field.empty() ? "" : field + ": ") + message),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)) {}

namespace {

int line_of_offset(const std::string& text, size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Best-effort line of a field path such as "edges[2].length": follows the
// named keys through the text, skipping k earlier siblings after "[k]".
int line_of_field(const std::string& text, const std::string& field) {
  size_t cursor = 0;
  int skip = 0;
  bool found_any = false;
  std::stringstream ss(field);
  std::string token;
  while (std::getline(ss, token, '.')) {
    std::string name = token;
    int index = -1;
    if (auto br = token.find('['); br != std::string::npos) {
      name = token.substr(0, br);
      index = std::stoi(token.substr(br + 1));
    }
    if (!name.empty()) {
      size_t pos = cursor;
      for (int k = 0; k <= skip; ++k) {
        size_t next = text.find("\"" + name + "\"", k == 0 ? pos : pos + 1);
        if (next == std::string::npos) {
          pos = std::string::npos;
          break;
        }
        pos = next;
      }
      if (pos == std::string::npos) break;
      cursor = pos;
      found_any = true;
      skip = 0;
    }
    if (index >= 0) skip += index;
  }
  return found_any ? line_of_offset(text, cursor) : 0;
}

[[noreturn]] void fail(const Document& doc, const std::string& field, const std::string& message) {
  throw ParseError(doc.file, line_of_field(doc.text, field), field, message);
}

std::string join(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }

const Json& require(const Document& doc, const Json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) fail(doc, field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(doc, join(field, key), "missing field");
  return *it;
}

Rational rational_from(const Document& doc, const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const InvalidInput& e) {
    fail(doc, field, e.what());
  }
  fail(doc, field, "expected a number or a numeric string");
}

std::string string_from(const Document& doc, const Json& j, const std::string& field) {
  if (!j.is_string()) fail(doc, field, "expected a string");
  return j.get<std::string>();
}

VertexId vertex_named(const Document& doc, const GeometricTree& tree, const std::string& name,
                      const std::string& field) {
  auto v = tree.find_vertex(name);
  if (!v) fail(doc, field, "unknown vertex '" + name + "'");
  return *v;
}

// Splits "u-v" at the dash that separates two adjacent vertices. Returns the
// edge and whether the key runs against the edge's orientation.
std::pair<EdgeId, bool> edge_named(const Document& doc, const GeometricTree& tree, const std::string& key,
                                   const std::string& field) {
  for (size_t dash = key.find('-'); dash != std::string::npos; dash = key.find('-', dash + 1)) {
    auto a = tree.find_vertex(key.substr(0, dash));
    auto b = tree.find_vertex(key.substr(dash + 1));
    if (!a || !b) continue;
    if (auto e = tree.edge_between(*a, *b)) return {*e, tree.edge(*e).u != *a};
  }
  fail(doc, field, "no edge named '" + key + "'");
}

std::string edge_name(const GeometricTree& tree, EdgeId e) {
  return tree.name(tree.edge(e).u) + "-" + tree.name(tree.edge(e).v);
}

Document child_document(const Document& doc, const std::string& relative) {
  fs::path base = fs::path(doc.file).parent_path();
  return load_document(base / relative);
}

std::shared_ptr<const GeometricTree> tree_ref(const Document& doc, const Json& j, const std::string& field) {
  if (j.is_string()) {
    Document sub = child_document(doc, j.get<std::string>());
    return std::make_shared<const GeometricTree>(tree_from_json(sub, sub.json));
  }
  return std::make_shared<const GeometricTree>(tree_from_json(doc, j, field));
}

TreePoint point_from(const Document& doc, const GeometricTree& tree, const Json& j, const std::string& field) {
  if (!j.is_object()) fail(doc, field, "expected a point object");
  if (j.contains("vertex")) {
    return TreePoint::at_vertex(vertex_named(doc, tree, string_from(doc, j["vertex"], join(field, "vertex")),
                                             join(field, "vertex")));
  }
  auto [e, flipped] = edge_named(doc, tree, string_from(doc, require(doc, j, "edge", field), join(field, "edge")),
                                 join(field, "edge"));
  Rational t = rational_from(doc, require(doc, j, "t", field), join(field, "t"));
  if (t < 0 || t > 1) fail(doc, join(field, "t"), "parameter outside [0,1]");
  return TreePoint::on_edge(tree, e, flipped ? Rational(1 - t) : t);
}

}  // namespace

Document document_from_string(std::string text, std::string file) {
  Document doc{std::move(file), std::move(text), {}};
  try {
    doc.json = Json::parse(doc.text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(doc.file, line_of_offset(doc.text, e.byte == 0 ? 0 : e.byte - 1), "", "malformed JSON");
  }
  return doc;
}

Document load_document(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return document_from_string(ss.str(), path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- trees

GeometricTree tree_from_json(const Document& doc, const Json& j, const std::string& field) {
  const Json& vs = require(doc, j, "vertices", field);
  if (!vs.is_array()) fail(doc, join(field, "vertices"), "expected an array of names");
  std::vector<std::string> names;
  for (size_t i = 0; i < vs.size(); ++i) {
    names.push_back(string_from(doc, vs[i], join(field, "vertices[" + std::to_string(i) + "]")));
  }
  const Json& es = require(doc, j, "edges", field);
  if (!es.is_array()) fail(doc, join(field, "edges"), "expected an array of edges");
  std::vector<Edge> edges;
  auto index_of = [&](const std::string& name, const std::string& f) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) fail(doc, f, "unknown vertex '" + name + "'");
    return static_cast<VertexId>(it - names.begin());
  };
  for (size_t i = 0; i < es.size(); ++i) {
    std::string f = join(field, "edges[" + std::to_string(i) + "]");
    VertexId u = index_of(string_from(doc, require(doc, es[i], "u", f), join(f, "u")), join(f, "u"));
    VertexId v = index_of(string_from(doc, require(doc, es[i], "v", f), join(f, "v")), join(f, "v"));
    Rational len = rational_from(doc, require(doc, es[i], "length", f), join(f, "length"));
    if (len <= 0) fail(doc, join(f, "length"), "edge length must be positive");
    edges.push_back({u, v, len});
  }
  try {
    return GeometricTree(std::move(names), std::move(edges));
  } catch (const InvalidInput& e) {
    fail(doc, join(field, "edges"), e.what());
  }
}

std::shared_ptr<const GeometricTree> load_tree(const fs::path& path) {
  Document doc = load_document(path);
  return std::make_shared<const GeometricTree>(tree_from_json(doc, doc.json));
}

Json tree_to_json(const GeometricTree& tree) {
  Json j;
  j["vertices"] = Json::array();
  for (size_t v = 0; v < tree.vertex_count(); ++v) j["vertices"].push_back(tree.name(static_cast<VertexId>(v)));
  j["edges"] = Json::array();
  for (size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edge(static_cast<EdgeId>(e));
    j["edges"].push_back({{"u", tree.name(ed.u)}, {"v", tree.name(ed.v)}, {"length", to_string(ed.length)}});
  }
  return j;
}

// ---------------------------------------------------------------- functions

PLFunction function_from_json(const Document& doc) {
  const Json& j = doc.json;
  auto tree = tree_ref(doc, require(doc, j, "tree", ""), "tree");
  const Json& vv = require(doc, j, "vertex_values", "");
  if (!vv.is_object()) fail(doc, "vertex_values", "expected an object");
  std::vector<std::optional<Rational>> given(tree->vertex_count());
  for (auto it = vv.begin(); it != vv.end(); ++it) {
    std::string f = "vertex_values." + it.key();
    given[vertex_named(doc, *tree, it.key(), f)] = rational_from(doc, it.value(), f);
  }
  std::vector<Rational> values;
  for (size_t v = 0; v < given.size(); ++v) {
    if (!given[v]) fail(doc, "vertex_values", "no value for vertex '" + tree->name(static_cast<VertexId>(v)) + "'");
    values.push_back(*given[v]);
  }
  std::vector<std::vector<Knot>> bps(tree->edge_count());
  if (j.contains("breakpoints")) {
    const Json& bj = j["breakpoints"];
    if (!bj.is_object()) fail(doc, "breakpoints", "expected an object keyed by edge");
    for (auto it = bj.begin(); it != bj.end(); ++it) {
      std::string f = "breakpoints." + it.key();
      auto [e, flipped] = edge_named(doc, *tree, it.key(), f);
      if (!it.value().is_array()) fail(doc, f, "expected a list of [t, value] pairs");
      std::vector<Knot> knots;
      for (size_t k = 0; k < it.value().size(); ++k) {
        const Json& pair = it.value()[k];
        std::string fk = f + "[" + std::to_string(k) + "]";
        if (!pair.is_array() || pair.size() != 2) fail(doc, fk, "expected [t, value]");
        Rational t = rational_from(doc, pair[0], fk);
        Rational value = rational_from(doc, pair[1], fk);
        knots.push_back({flipped ? Rational(1 - t) : t, value});
      }
      if (flipped) std::reverse(knots.begin(), knots.end());
      bps[e].insert(bps[e].end(), knots.begin(), knots.end());
    }
    for (auto& list : bps) std::sort(list.begin(), list.end(), [](const Knot& a, const Knot& b) { return a.t < b.t; });
  }
  try {
    return PLFunction(tree, std::move(values), std::move(bps));
  } catch (const InvalidInput& e) {
    fail(doc, "breakpoints", e.what());
  }
}

PLFunction load_function(const fs::path& path) { return function_from_json(load_document(path)); }

Json function_to_json(const PLFunction& f, const NumberFormat& fmt) {
  const GeometricTree& tree = f.tree();
  Json j;
  j["tree"] = tree_to_json(tree);
  j["vertex_values"] = Json::object();
  for (size_t v = 0; v < tree.vertex_count(); ++v) {
    j["vertex_values"][tree.name(static_cast<VertexId>(v))] = fmt(f.vertex_value(static_cast<VertexId>(v)));
  }
  j["breakpoints"] = Json::object();
  for (size_t e = 0; e < tree.edge_count(); ++e) {
    const auto& list = f.breakpoints(static_cast<EdgeId>(e));
    if (list.empty()) continue;
    Json arr = Json::array();
    for (const Knot& k : list) arr.push_back({fmt(k.t), fmt(k.value)});
    j["breakpoints"][edge_name(tree, static_cast<EdgeId>(e))] = arr;
  }
  return j;
}

// ---------------------------------------------------------------- merge trees

CellularMergeTree merge_tree_from_json(const Document& doc, const Json& j, const std::string& field) {
  const Json& lj = require(doc, j, "leaves", field);
  const Json& ij = j.contains("internal") ? j["internal"] : Json::object();
  const Json& pj = require(doc, j, "parent", field);
  if (!lj.is_object() || !ij.is_object() || !pj.is_object()) fail(doc, field, "leaves, internal and parent must be objects");
  std::vector<MergeNode> nodes;
  for (auto it = lj.begin(); it != lj.end(); ++it) {
    nodes.push_back({it.key(), rational_from(doc, it.value(), join(field, "leaves." + it.key())), -1, {}});
  }
  const size_t leaf_count = nodes.size();
  for (auto it = ij.begin(); it != ij.end(); ++it) {
    nodes.push_back({it.key(), rational_from(doc, it.value(), join(field, "internal." + it.key())), -1, {}});
  }
  auto id_of = [&](const std::string& name) -> int {
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].name == name) return static_cast<int>(i);
    }
    return -1;
  };
  for (auto& node : nodes) {
    std::string f = join(field, "parent." + node.name);
    if (!pj.contains(node.name)) fail(doc, join(field, "parent"), "no parent entry for '" + node.name + "'");
    std::string p = string_from(doc, pj[node.name], f);
    if (p == "root") continue;
    node.parent = id_of(p);
    if (node.parent < 0) fail(doc, f, "unknown node '" + p + "'");
  }
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    if (id_of(it.key()) < 0) fail(doc, join(field, "parent." + it.key()), "unknown node");
  }
  std::vector<int> leaf_order(leaf_count);
  for (size_t i = 0; i < leaf_count; ++i) leaf_order[i] = static_cast<int>(i);
  try {
    return CellularMergeTree(std::move(nodes), std::move(leaf_order));
  } catch (const InvalidInput& e) {
    fail(doc, join(field, "parent"), e.what());
  }
}

CellularMergeTree load_merge_tree(const fs::path& path) {
  Document doc = load_document(path);
  return merge_tree_from_json(doc, doc.json);
}

Json merge_tree_to_json(const CellularMergeTree& t, const NumberFormat& fmt) {
  Json j;
  j["leaves"] = Json::object();
  for (int id : t.leaves()) j["leaves"][t.node(id).name] = fmt(t.node(id).height);
  j["internal"] = Json::object();
  for (int id : t.internal_nodes()) j["internal"][t.node(id).name] = fmt(t.node(id).height);
  j["parent"] = Json::object();
  auto put = [&](int id) {
    int p = t.node(id).parent;
    j["parent"][t.node(id).name] = p < 0 ? std::string("root") : t.node(p).name;
  };
  for (int id : t.leaves()) put(id);
  for (int id : t.internal_nodes()) put(id);
  return j;
}

// ---------------------------------------------------------------- barcodes

Barcode barcode_from_json(const Document& doc, const Json& j, const std::string& field) {
  if (!j.is_array()) fail(doc, field, "expected a list of [birth, death] pairs");
  std::vector<Bar> bars;
  for (size_t k = 0; k < j.size(); ++k) {
    std::string f = field + "[" + std::to_string(k) + "]";
    const Json& pair = j[k];
    if (!pair.is_array() || pair.size() != 2) fail(doc, f, "expected [birth, death]");
    Bar b{rational_from(doc, pair[0], f), std::nullopt};
    const Json& d = pair[1];
    bool inf = d.is_null() || (d.is_string() && (d == "inf" || d == "Infinity" || d == "+inf"));
    if (!inf) b.death = rational_from(doc, d, f);
    bars.push_back(std::move(b));
  }
  try {
    return Barcode(std::move(bars));
  } catch (const InvalidInput& e) {
    fail(doc, field, e.what());
  }
}

Barcode load_barcode(const fs::path& path) {
  Document doc = load_document(path);
  return barcode_from_json(doc, doc.json);
}

Json barcode_to_json(const Barcode& d, const NumberFormat& fmt) {
  Json j = Json::array();
  for (const Bar& b : d.bars()) j.push_back({fmt(b.birth), b.death ? fmt(*b.death) : std::string("inf")});
  return j;
}

// ---------------------------------------------------------------- configurations

Configuration configuration_from_json(const Document& doc) {
  const Json& j = doc.json;
  auto tree = tree_ref(doc, require(doc, j, "tree", ""), "tree");
  const Json& mj = require(doc, j, "merge_tree", "");
  std::shared_ptr<const CellularMergeTree> mt;
  if (mj.is_string()) {
    Document sub = child_document(doc, mj.get<std::string>());
    mt = std::make_shared<const CellularMergeTree>(merge_tree_from_json(sub, sub.json));
  } else {
    mt = std::make_shared<const CellularMergeTree>(merge_tree_from_json(doc, mj, "merge_tree"));
  }
  const Json& pj = require(doc, j, "points", "");
  if (!pj.is_array()) fail(doc, "points", "expected a list of points");
  std::vector<TreePoint> pts;
  for (size_t k = 0; k < pj.size(); ++k) pts.push_back(point_from(doc, *tree, pj[k], "points[" + std::to_string(k) + "]"));
  try {
    return Configuration(tree, mt, std::move(pts));
  } catch (const InvalidInput& e) {
    fail(doc, "points", e.what());
  }
}

Configuration load_configuration(const fs::path& path) { return configuration_from_json(load_document(path)); }

Json point_to_json(const GeometricTree& tree, const TreePoint& p, const NumberFormat& fmt) {
  if (p.is_vertex()) {
    if (tree.edge_count() == 0) return {{"vertex", tree.name(p.vertex())}};
    EdgeId e = tree.incident(p.vertex()).front();
    return {{"edge", edge_name(tree, e)}, {"t", tree.edge(e).u == p.vertex() ? "0" : "1"}};
  }
  return {{"edge", edge_name(tree, p.edge())}, {"t", fmt(p.param())}};
}

Json configuration_to_json(const Configuration& x, const NumberFormat& fmt) {
  Json j;
  j["tree"] = tree_to_json(x.tree());
  j["merge_tree"] = merge_tree_to_json(x.merge_tree(), fmt);
  j["points"] = Json::array();
  for (const TreePoint& p : x.points()) j["points"].push_back(point_to_json(x.tree(), p, fmt));
  return j;
}

Json path_to_json(const ConfigPath& path, const NumberFormat& fmt) {
  const GeometricTree& tree = path.start().tree();
  auto points = [&](const Configuration& c) {
    Json arr = Json::array();
    for (const TreePoint& p : c.points()) arr.push_back(point_to_json(tree, p, fmt));
    return arr;
  };
  Json j;
  j["start"] = points(path.start());
  j["end"] = points(path.end());
  j["moves"] = Json::array();
  for (const Move& m : path.moves()) {
    if (const auto* pm = std::get_if<PointMove>(&m)) {
      j["moves"].push_back({{"type", "point"},
                            {"index", pm->index + 1},
                            {"from", point_to_json(tree, pm->route.start(), fmt)},
                            {"to", point_to_json(tree, pm->route.end(), fmt)},
                            {"length", fmt(pm->route.length())}});
    } else {
      const auto& lm = std::get<LineMove>(m);
      Json from = Json::array(), to = Json::array();
      for (const Rational& s : lm.from) from.push_back(fmt(s));
      for (const Rational& s : lm.to) to.push_back(fmt(s));
      j["moves"].push_back({{"type", "line"},
                            {"track_from", point_to_json(tree, lm.track.start(), fmt)},
                            {"track_to", point_to_json(tree, lm.track.end(), fmt)},
                            {"from", from},
                            {"to", to}});
    }
  }
  return j;
}

std::string path_to_csv(const ConfigPath& path, const NumberFormat& fmt) {
  const GeometricTree& tree = path.start().tree();
  std::string out = "time,point,edge,t\n";
  auto rows = [&](const Configuration& c, const Rational& time) {
    for (size_t i = 0; i < c.size(); ++i) {
      Json p = point_to_json(tree, c.point(static_cast<int>(i)), fmt);
      std::string edge = p.contains("edge") ? p["edge"].get<std::string>() : p["vertex"].get<std::string>();
      std::string t = p.contains("t") ? p["t"].get<std::string>() : "0";
      out += fmt(time) + "," + std::to_string(i + 1) + "," + edge + "," + t + "\n";
    }
  };
  rows(path.start(), 0);
  Configuration cur = path.start();
  for (size_t k = 0; k < path.moves().size(); ++k) {
    const Move& m = path.moves()[k];
    for (const Rational& tau : audit_times(cur, m)) {
      if (tau != 0) rows(configuration_at(cur, m, tau), Rational(static_cast<long>(k)) + tau);
    }
    cur = apply_move(cur, m);
  }
  return out;
}

}  // namespace fibertree
