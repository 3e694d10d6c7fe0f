#include "fibertree/barcode.hpp"

#include <algorithm>
#include <set>

#include "fibertree/errors.hpp"

namespace fibertree {

bool Bar::operator<(const Bar& o) const {
  if (birth != o.birth) return birth < o.birth;
  if (infinite() || o.infinite()) return !infinite() && o.infinite();
  return *death < *o.death;
}

Barcode::Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) {
  for (const Bar& b : bars_) {
    if (b.death && !(b.birth < *b.death)) {
      throw InvalidInput("bar [" + to_string(b.birth) + ", " + to_string(*b.death) + ") is empty");
    }
  }
  std::sort(bars_.begin(), bars_.end());
}

std::string describe(const Barcode& d) {
  std::string out = "{";
  for (size_t i = 0; i < d.size(); ++i) {
    const Bar& b = d.bars()[i];
    out += (i ? ", [" : "[") + to_string(b.birth) + ", " + (b.death ? to_string(*b.death) : "inf") + ")";
  }
  return out + "}";
}

namespace {

// Oldest birth below v; appends the bars that die inside v's subtree.
Rational elder(const CellularMergeTree& t, int v, std::vector<Bar>& out) {
  const MergeNode& node = t.node(v);
  if (node.children.empty()) return node.height;
  std::vector<Rational> births;
  for (int c : node.children) births.push_back(elder(t, c, out));
  size_t oldest = 0;
  for (size_t i = 1; i < births.size(); ++i) {
    if (births[i] < births[oldest]) oldest = i;
  }
  for (size_t i = 0; i < births.size(); ++i) {
    if (i == oldest) continue;
    if (births[i] == births[oldest]) {
      throw AmbiguityError("elder rule undefined at '" + node.name + "': branches tie at birth " +
                           to_string(births[i]));
    }
    out.push_back({births[i], node.height});
  }
  return births[oldest];
}

}  // namespace

Barcode barcode_of(const CellularMergeTree& t) {
  std::vector<Bar> bars;
  Rational oldest = elder(t, t.root(), bars);
  bars.push_back({oldest, std::nullopt});
  return Barcode(std::move(bars));
}

bool is_generic_barcode(const Barcode& d) {
  std::set<Rational> seen;
  for (const Bar& b : d.bars()) {
    if (!seen.insert(b.birth).second) return false;
    if (b.death && !seen.insert(*b.death).second) return false;
  }
  return true;
}

void check_realizable(const Barcode& d) {
  const Bar* unbounded = nullptr;
  for (const Bar& b : d.bars()) {
    if (!b.infinite()) continue;
    if (unbounded) throw NonRealizable("barcode has more than one infinite bar");
    unbounded = &b;
  }
  if (!unbounded) throw NonRealizable("barcode has no infinite bar");
  for (const Bar& b : d.bars()) {
    if (b.birth < unbounded->birth) {
      throw NonRealizable("bar born at " + to_string(b.birth) + " is not contained in the infinite bar");
    }
  }
}

std::optional<Rational> SeparationThresholds::min() const {
  if (!left) return right;
  if (!right) return left;
  return fibertree::min(*left, *right);
}

namespace {

std::optional<Rational> min_gap(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::optional<Rational> best;
  for (size_t i = 1; i < values.size(); ++i) {
    Rational gap = values[i] - values[i - 1];
    if (!best || gap < *best) best = gap;
  }
  return best;
}

}  // namespace

SeparationThresholds separation_thresholds(const Barcode& d) {
  std::vector<Rational> lefts, rights;
  for (const Bar& b : d.bars()) {
    lefts.push_back(b.birth);
    if (b.death) rights.push_back(*b.death);
  }
  return {min_gap(lefts), min_gap(rights)};
}

}  // namespace fibertree
