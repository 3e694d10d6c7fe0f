#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fibertree/barcode_fiber.hpp"

namespace fibertree {

using Json = nlohmann::ordered_json;

// Malformed input file. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, int line, std::string field, const std::string& message);
  const std::string& file() const { return file_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  int line_;
  std::string field_;
};

// How numbers are printed: exact fractions, or rounded decimals.
struct NumberFormat {
  std::optional<int> decimals;
  std::string operator()(const Rational& q) const { return decimals ? to_decimal(q, *decimals) : to_string(q); }
};

// A parsed document plus what is needed to report errors against it.
struct Document {
  std::string file;
  std::string text;
  Json json;
};

Document load_document(const std::filesystem::path& path);
Document document_from_string(std::string text, std::string file = "<string>");

GeometricTree tree_from_json(const Document& doc, const Json& j, const std::string& field = "");
std::shared_ptr<const GeometricTree> load_tree(const std::filesystem::path& path);
Json tree_to_json(const GeometricTree& tree);

PLFunction function_from_json(const Document& doc);
PLFunction load_function(const std::filesystem::path& path);
Json function_to_json(const PLFunction& f, const NumberFormat& fmt = {});

CellularMergeTree merge_tree_from_json(const Document& doc, const Json& j, const std::string& field = "");
CellularMergeTree load_merge_tree(const std::filesystem::path& path);
Json merge_tree_to_json(const CellularMergeTree& t, const NumberFormat& fmt = {});

Barcode barcode_from_json(const Document& doc, const Json& j, const std::string& field = "");
Barcode load_barcode(const std::filesystem::path& path);
Json barcode_to_json(const Barcode& d, const NumberFormat& fmt = {});

Configuration configuration_from_json(const Document& doc);
Configuration load_configuration(const std::filesystem::path& path);
Json configuration_to_json(const Configuration& x, const NumberFormat& fmt = {});

Json point_to_json(const GeometricTree& tree, const TreePoint& p, const NumberFormat& fmt = {});
Json path_to_json(const ConfigPath& path, const NumberFormat& fmt = {});
// Rows "time,point,edge,t": move k occupies times [k, k+1], sampled at its
// audit times.
std::string path_to_csv(const ConfigPath& path, const NumberFormat& fmt = {});

// Stable text rendering used for every JSON output.
std::string dump(const Json& j);

}  // namespace fibertree
