#pragma once

#include <optional>
#include <vector>

#include "fibertree/merge_tree.hpp"

namespace fibertree {

// Half-open interval [birth, death); no death means death = +inf.
struct Bar {
  Rational birth;
  std::optional<Rational> death;

  bool infinite() const { return !death.has_value(); }
  bool operator==(const Bar& o) const { return birth == o.birth && death == o.death; }
  bool operator<(const Bar& o) const;
};

// Multiset of bars kept sorted, so equality is multiset equality.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars);

  const std::vector<Bar>& bars() const { return bars_; }
  size_t size() const { return bars_.size(); }
  bool operator==(const Barcode& o) const { return bars_ == o.bars_; }
  bool operator!=(const Barcode& o) const { return !(*this == o); }

 private:
  std::vector<Bar> bars_;
};

std::string describe(const Barcode& d);

// Elder rule. Throws AmbiguityError when two branches meeting at a node tie
// for the oldest birth.
Barcode barcode_of(const CellularMergeTree& t);

// All endpoints (births and finite deaths) pairwise distinct.
bool is_generic_barcode(const Barcode& d);

// Throws NonRealizable unless there is exactly one infinite bar and it
// contains every other bar.
void check_realizable(const Barcode& d);

struct SeparationThresholds {
  std::optional<Rational> left;   // none = +inf
  std::optional<Rational> right;  // none = +inf
  // min(left, right), none when both are infinite
  std::optional<Rational> min() const;
};

SeparationThresholds separation_thresholds(const Barcode& d);

}  // namespace fibertree
