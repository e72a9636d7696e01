#include "cchain/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cchain {

std::string Backend::name() const {
  switch (kind) {
    case BackendKind::exact:
      return "exact";
    case BackendKind::float64:
      return "float64";
    case BackendKind::bigfloat:
      return "bigfloat(" + std::to_string(digits) + ")";
  }
  return "unknown";
}

Backend Backend::parse(std::string_view text, unsigned digits) {
  if (text == "exact") return exact();
  if (text == "float64" || text == "float" || text == "double") return float64();
  if (text == "bigfloat") {
    if (digits < kMinDigits) {
      throw std::invalid_argument("bigfloat backend needs at least " + std::to_string(kMinDigits) +
                                  " digits, got " + std::to_string(digits));
    }
    return bigfloat(digits);
  }
  throw std::invalid_argument("unknown backend '" + std::string(text) + "' (expected exact, float64 or bigfloat)");
}

BigFloatScope::BigFloatScope(unsigned digits) : digits_(digits), previous_(BigFloat::default_precision()) {
  if (digits < kMinDigits) {
    throw std::invalid_argument("bigfloat precision must be at least " + std::to_string(kMinDigits) +
                                " decimal digits, got " + std::to_string(digits));
  }
  BigFloat::default_precision(digits);
}

BigFloatScope::~BigFloatScope() { BigFloat::default_precision(previous_); }

unsigned current_bigfloat_digits() { return BigFloat::default_precision(); }

int sign(const Rational& q) { return mpq_sgn(q.backend().data()); }
int sign(const Integer& z) { return mpz_sgn(z.backend().data()); }

Rational pow2(long e) {
  Integer one(1);
  if (e >= 0) return Rational(Integer(one << static_cast<unsigned>(e)));
  return Rational(one, Integer(one << static_cast<unsigned>(-e)));
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (sign(den) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
    digits += s[pos];
    seen_digit = true;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
      digits += s[pos];
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail();
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used == 0) return fail();
    pos += used;
    exponent += e;
  }
  if (pos != s.size()) return fail();

  Rational value{Integer(digits)};
  Integer ten_pow = mp::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
  value = exponent >= 0 ? value * Rational(ten_pow) : value / Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

std::string to_fraction_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::optional<std::string> exact_decimal(const Rational& q) {
  Integer den = denominator(q);
  unsigned twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  unsigned scale = std::max(twos, fives);
  // q = num / (2^twos 5^fives) = num * 2^(scale-twos) * 5^(scale-fives) / 10^scale
  Integer scaled = numerator(q) * mp::pow(Integer(2), scale - twos) * mp::pow(Integer(5), scale - fives);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (scale > 0) {
    if (body.size() <= scale) body.insert(0, scale - body.size() + 1, '0');
    body.insert(body.size() - scale, ".");
  }
  return negative ? "-" + body : body;
}

std::string to_decimal_string(const BigFloat& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string to_decimal_string(const Rational& q, unsigned digits) {
  BigFloatScope scope(std::max(digits + 10, kMinDigits));
  return to_decimal_string(to_bigfloat(q), digits);
}

}  // namespace cchain
