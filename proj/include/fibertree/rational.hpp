#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace fibertree {

// Exact rational scalar used for every coordinate, length and function value.
// Beware: arithmetic on mpq_class yields expression templates, so bind results
// to `Rational`, never to `auto`.
// Unlike a bare mpq_class, the numerator/denominator constructors always
// canonicalize; gmp arithmetic and comparisons assume canonical operands.
class Rational : public mpq_class {
 public:
  using mpq_class::mpq_class;
  using mpq_class::operator=;
  Rational() = default;
  Rational(const Rational&) = default;
  Rational(Rational&&) = default;
  Rational& operator=(const Rational&) = default;
  Rational& operator=(Rational&&) = default;
  Rational(const mpq_class& q) : mpq_class(q) {}
  Rational(mpq_class&& q) : mpq_class(std::move(q)) {}
  template <class N, class D>
    requires(std::is_integral_v<N> && std::is_integral_v<D>)
  Rational(N num, D den) : mpq_class(mpz_class(num), mpz_class(den)) {
    canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) : mpq_class(num, den) { canonicalize(); }
};

// Accepts integers ("-3"), fractions ("3/2") and finite decimals ("1.25",
// "-0.5", "2e-3"). Throws InvalidInput on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical exact rendering: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// Decimal rendering rounded half away from zero to `digits` fractional digits.
std::string to_decimal(const Rational& q, int digits);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fibertree
