#pragma once

// Numeric substrate shared by every module: exact integers and rationals
// (GMP), variable-precision binary floats (MPFR) and the backend tag used to
// select between them at run time.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace cchain {

namespace mp = boost::multiprecision;

/// Arbitrary-precision signed integer.
using Integer = mp::number<mp::gmp_int, mp::et_off>;

/// Arbitrary-precision rational. GMP keeps every result in lowest terms with a
/// positive denominator, so equality is canonical-form equality.
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// Variable-precision binary float; the working precision is the thread-local
/// default installed by BigFloatScope.
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultDigits = 60;
inline constexpr unsigned kMinDigits = 15;

enum class BackendKind { exact, float64, bigfloat };

struct Backend {
  BackendKind kind = BackendKind::exact;
  unsigned digits = 0;  // decimal digits, bigfloat only

  static Backend exact() { return {BackendKind::exact, 0}; }
  static Backend float64() { return {BackendKind::float64, 0}; }
  static Backend bigfloat(unsigned digits = kDefaultDigits) { return {BackendKind::bigfloat, digits}; }

  /// "exact", "float64" or "bigfloat(60)".
  std::string name() const;

  /// Accepts "exact", "float64"/"float"/"double" and "bigfloat"; the digit
  /// count applies to bigfloat only and is validated.
  static Backend parse(std::string_view text, unsigned digits = kDefaultDigits);

  friend bool operator==(const Backend&, const Backend&) = default;
};

/// Installs `digits` decimal digits as the BigFloat working precision for the
/// current thread and restores the previous value on destruction.
class BigFloatScope {
 public:
  explicit BigFloatScope(unsigned digits);
  ~BigFloatScope();
  BigFloatScope(const BigFloatScope&) = delete;
  BigFloatScope& operator=(const BigFloatScope&) = delete;

  unsigned digits() const { return digits_; }

 private:
  unsigned digits_;
  unsigned previous_;
};

unsigned current_bigfloat_digits();

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
Backend backend_of() {
  if constexpr (std::is_same_v<T, Rational>) {
    return Backend::exact();
  } else if constexpr (std::is_same_v<T, double>) {
    return Backend::float64();
  } else {
    static_assert(std::is_same_v<T, BigFloat>, "unsupported scalar");
    return Backend::bigfloat(current_bigfloat_digits());
  }
}

template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<T, double>) {
    return q.template convert_to<double>();
  } else {
    BigFloat x;
    mpfr_set_q(x.backend().data(), q.backend().data(), MPFR_RNDN);
    return x;
  }
}

template <class T>
T from_int(long long v) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(v);
  } else {
    return T(v);
  }
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline BigFloat to_bigfloat(const Rational& q) { return from_rational<BigFloat>(q); }
inline BigFloat to_bigfloat(double x) { return BigFloat(x); }
inline BigFloat to_bigfloat(const BigFloat& x) { return x; }

inline Rational make_rational(long long num, long long den = 1) { return Rational(Integer(num), Integer(den)); }

inline Integer numerator(const Rational& q) { return mp::numerator(q); }
inline Integer denominator(const Rational& q) { return mp::denominator(q); }

int sign(const Rational& q);
int sign(const Integer& z);

/// 2^e as a rational, e may be negative.
Rational pow2(long e);

/// Parses "3", "-7/9", "0.125", "1e-40", "-2.5E3" into an exact rational.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// "num/den" (or just "num" for integers).
std::string to_fraction_string(const Rational& q);

/// Exact decimal expansion when the denominator has no prime factor other than
/// 2 and 5, std::nullopt otherwise.
std::optional<std::string> exact_decimal(const Rational& q);

/// Correctly rounded scientific-notation string with `digits` significant
/// digits.
std::string to_decimal_string(const Rational& q, unsigned digits);
std::string to_decimal_string(const BigFloat& x, unsigned digits);

}  // namespace cchain
