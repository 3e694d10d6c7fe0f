#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fibertree/io.hpp"

using namespace fibertree;

namespace {

const std::filesystem::path data_dir = FIBERTREE_TEST_DATA;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
ParseError parse_error_of(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError("", 0, "", "");
}

}  // namespace

TEST_CASE("canonical files round trip byte for byte") {
  SUBCASE("merge tree") {
    auto p = data_dir / "canonical_merge_tree.json";
    CHECK(dump(merge_tree_to_json(load_merge_tree(p))) == slurp(p));
  }
  SUBCASE("barcode") {
    auto p = data_dir / "canonical_barcode.json";
    CHECK(dump(barcode_to_json(load_barcode(p))) == slurp(p));
  }
  SUBCASE("function") {
    auto p = data_dir / "canonical_function.json";
    CHECK(dump(function_to_json(load_function(p))) == slurp(p));
  }
}

TEST_CASE("parsed objects survive a write and reread") {
  auto tree = load_tree(data_dir / "star3.json");
  auto again = tree_from_json(document_from_string(dump(tree_to_json(*tree))), document_from_string(dump(tree_to_json(*tree))).json);
  CHECK(again == *tree);

  auto f = load_function(data_dir / "two_minima.json");
  auto g = function_from_json(document_from_string(dump(function_to_json(f)), (data_dir / "x.json").string()));
  CHECK(g == f);

  auto x = load_configuration(data_dir / "config_a.json");
  auto y = configuration_from_json(document_from_string(dump(configuration_to_json(x)), (data_dir / "x.json").string()));
  CHECK(y.points() == x.points());
  CHECK(y.merge_tree().size() == x.merge_tree().size());
}

TEST_CASE("barcode infinity spellings") {
  for (const char* inf : {"null", "\"inf\"", "\"Infinity\"", "\"+inf\""}) {
    auto doc = document_from_string(std::string("[[\"0\", ") + inf + "], [1, \"2/1\"]]");
    Barcode d = barcode_from_json(doc, doc.json);
    REQUIRE(d.size() == 2);
    CHECK(d.bars()[0].infinite());
    CHECK(*d.bars()[1].death == 2);
  }
  CHECK(dump(barcode_to_json(load_barcode(data_dir / "d3.json"))) ==
        "[\n  [\n    \"0\",\n    \"inf\"\n  ],\n  [\n    \"1\",\n    \"3\"\n  ],\n  [\n    \"2\",\n    \"5/2\"\n  ]\n]\n");
}

TEST_CASE("parse errors carry file, line and field") {
  SUBCASE("bad fraction") {
    auto e = parse_error_of([] { load_tree(data_dir / "bad_length.json"); });
    CHECK(e.line() == 4);
    CHECK(e.field() == "edges[0].length");
    CHECK(std::string(e.what()).find("bad_length.json:4: edges[0].length:") != std::string::npos);
  }
  SUBCASE("malformed JSON") {
    auto e = parse_error_of([] { load_tree(data_dir / "bad_syntax.json"); });
    CHECK(e.line() == 4);
  }
  SUBCASE("unknown parent") {
    auto e = parse_error_of([] { load_merge_tree(data_dir / "bad_parent.json"); });
    CHECK(e.line() == 4);
    CHECK(e.field().rfind("parent", 0) == 0);
  }
  SUBCASE("missing vertex value") {
    auto e = parse_error_of([] { load_function(data_dir / "missing_value.json"); });
    CHECK(e.field().rfind("vertex_values", 0) == 0);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_tree(data_dir / "nope.json"), ParseError);
  }
  SUBCASE("later array element") {
    std::string text = "{\n\"vertices\": [\"a\", \"b\", \"c\"],\n\"edges\": [\n{\"u\": \"a\", \"v\": \"b\", \"length\": \"1\"},\n"
                       "{\"u\": \"b\", \"v\": \"c\", \"length\": \"-1\"}\n]\n}\n";
    auto doc = document_from_string(text, "t.json");
    auto e = parse_error_of([&] { tree_from_json(doc, doc.json); });
    CHECK(e.field() == "edges[1].length");
    CHECK(e.line() == 5);
  }
}

TEST_CASE("reversed edge keys flip the parameter") {
  auto f = load_function(data_dir / "reversed_key.json");
  const auto& tree = f.tree();
  EdgeId ca = *tree.edge_between(*tree.find_vertex("c"), *tree.find_vertex("a"));
  REQUIRE(f.breakpoints(ca).size() == 1);
  CHECK(f.breakpoints(ca)[0].t == Rational(3, 4));
  CHECK(f.breakpoints(ca)[0].value == 2);
}

TEST_CASE("points as vertices and on edges") {
  auto tree = load_tree(data_dir / "star3.json");
  std::string text = R"({"tree": "star3.json", "merge_tree": "mt3.json",
    "points": [{"vertex": "a"}, {"edge": "b-c", "t": "1/4"}, {"edge": "c-d", "t": 1}]})";
  auto doc = document_from_string(text, (data_dir / "inline.json").string());
  auto x = configuration_from_json(doc);
  CHECK(x.point(0) == TreePoint::at_vertex(*tree->find_vertex("a")));
  EdgeId cb = *tree->edge_between(*tree->find_vertex("c"), *tree->find_vertex("b"));
  CHECK(x.point(1) == TreePoint::on_edge(*tree, cb, Rational(3, 4)));
  CHECK(x.point(2) == TreePoint::at_vertex(*tree->find_vertex("d")));

  Json a = point_to_json(*tree, x.point(0));
  CHECK(a["edge"] == "c-a");
  CHECK(a["t"] == "1");

  auto single = std::make_shared<GeometricTree>(std::vector<std::string>{"only"}, std::vector<Edge>{});
  CHECK(point_to_json(*single, TreePoint::at_vertex(0))["vertex"] == "only");
}

TEST_CASE("inline trees and merge trees are accepted") {
  std::string text = R"({"tree": {"vertices": ["p", "q"], "edges": [{"u": "p", "v": "q", "length": "3"}]},
    "merge_tree": {"leaves": {"l1": "0"}, "parent": {"l1": "root"}},
    "points": [{"edge": "p-q", "t": "1/3"}]})";
  auto x = configuration_from_json(document_from_string(text));
  CHECK(x.tree().edge(0).length == 3);
  CHECK(x.merge_tree().leaf_count() == 1);
}

TEST_CASE("decimal output") {
  NumberFormat fmt{3};
  auto d = load_barcode(data_dir / "d3.json");
  Json j = barcode_to_json(d, fmt);
  CHECK(j[2][1] == "2.500");
  CHECK(j[0][1] == "inf");
}

TEST_CASE("path exports") {
  auto x = load_configuration(data_dir / "config_a.json");
  auto y = load_configuration(data_dir / "config_b.json");
  ConfigPath path = connect(x, y);
  Json j = path_to_json(path);
  CHECK(j["moves"].size() == path.size());
  CHECK(j["start"] == configuration_to_json(x)["points"]);
  std::string csv = path_to_csv(path);
  CHECK(csv.rfind("time,point,edge,t\n", 0) == 0);
  // one row per point at time 0
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int zero_rows = 0;
  while (std::getline(in, line)) zero_rows += line.rfind("0,", 0) == 0 ? 1 : 0;
  CHECK(zero_rows == static_cast<int>(x.size()));
}
