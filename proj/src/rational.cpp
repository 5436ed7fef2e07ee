#include "cuspmag/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cuspmag {

Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

bool is_integral(const RationalVector& v) {
  for (const auto& q : v)
    if (!is_integral(q)) return false;
  return true;
}

Rational floor_of(const Rational& q) {
  Integer n = numerator_of(q), d = denominator_of(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

std::optional<Rational> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 4) return std::nullopt;
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(s)) return std::nullopt;
    digits = std::string(s);
  } else {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      return std::nullopt;
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  }
  if (digits.empty()) return std::nullopt;
  // cpp_int reads a leading 0 as an octal prefix
  const auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  Integer mantissa(digits);
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-r) : r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!num || !all_digits(den_text)) return std::nullopt;
    auto num_den = parse_decimal(den_text);
    if (!num_den) return std::nullopt;
    const Integer den = numerator_of(*num_den);
    if (den == 0) return std::nullopt;
    return *num / Rational(den);
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = gcd(a, b);
  Integer r = a / g * b;
  return r < 0 ? Integer(-r) : r;
}

double PiScalar::value() const { return to_double(coefficient) * std::pow(M_PI, pi_power); }

std::optional<PiScalar> parse_pi_scalar(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto pos = s.find("pi");
  if (pos == std::string::npos) {
    auto q = parse_rational(s);
    if (!q) return std::nullopt;
    return PiScalar{*q, 0};
  }
  std::string coef = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  Rational c{1};
  if (coef == "-") {
    c = -1;
  } else if (!coef.empty() && coef != "+") {
    auto q = parse_rational(coef);
    if (!q) return std::nullopt;
    c = *q;
  }
  int power = 1;
  if (!tail.empty()) {
    if (tail[0] != '^' || !all_digits(tail.substr(1)) || tail.size() > 3) return std::nullopt;
    power = std::stoi(tail.substr(1));
  }
  if (c == 0) power = 0;
  return PiScalar{c, power};
}

std::string to_string(const PiScalar& s) {
  if (s.pi_power == 0) return to_string(s.coefficient);
  std::string out = to_string(s.coefficient) + "*pi";
  if (s.pi_power != 1) out += "^" + std::to_string(s.pi_power);
  return out;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det{1};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return Rational{0};
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, RationalVector(n, Rational{0}));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    std::swap(a[pivot], a[c]);
    std::swap(inv[pivot], inv[c]);
    Rational p = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace cuspmag
