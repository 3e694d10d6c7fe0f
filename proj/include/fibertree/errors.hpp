#pragma once

#include <stdexcept>
#include <string>

namespace fibertree {

// Input violates a documented precondition or type invariant.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The geometric tree is outside the supported hypothesis (e.g. an interval
// where a branch point is required).
class UnsupportedDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Elder-rule pairing is undefined because two branches tie for oldest.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Barcode cannot come from a function on a tree.
class NonRealizable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two configurations lie in different path components (interval domain).
class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fibertree
