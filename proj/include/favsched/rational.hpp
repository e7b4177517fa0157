#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace favsched {

// Exact arithmetic for loads and processing times. Adversarial constructions
// depend on exact ties, so everything the algorithms compare is a Rational.
// Expression templates are off: an `auto` bound to a Rational expression
// would otherwise dangle once its operands go out of scope.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

// Accepts integers ("3"), decimals ("0.25", "-1.5e-3") and fractions ("4/5").
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Exact rational for the shortest decimal that round-trips `value`,
// so 0.2 becomes 1/5 rather than the binary expansion.
Rational rational_from_double(double value);

double to_double(const Rational& value);

// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(num, den);
}

}  // namespace favsched
