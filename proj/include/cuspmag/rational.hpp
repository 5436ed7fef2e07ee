#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cuspmag {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);
bool is_integral(const Rational& q);
bool is_integral(const RationalVector& v);
Rational floor_of(const Rational& q);
double to_double(const Rational& q);

/// Exact parse of "7", "-3/4", "0.125", "1e4" or "2.5e-3".
std::optional<Rational> parse_rational(std::string_view text);
/// "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// A rational multiple of an integer power of pi, e.g. 2pi or 4pi^2. Lengths
/// and Gram entries are stored this way so that lattice norms stay exact.
struct PiScalar {
  Rational coefficient{0};
  int pi_power = 0;

  double value() const;
  bool operator==(const PiScalar&) const = default;
};

std::optional<PiScalar> parse_pi_scalar(std::string_view text);
std::string to_string(const PiScalar& s);

/// Determinant of a square rational matrix by fraction-exact elimination.
Rational determinant(RationalMatrix m);
/// Inverse of a nonsingular square rational matrix.
RationalMatrix inverse(const RationalMatrix& m);
/// Rank over Q.
std::size_t rank(RationalMatrix m);

}  // namespace cuspmag
