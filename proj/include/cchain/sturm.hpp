#pragma once

// Exact Sturm sequences over the integers.

#include "cchain/exact_core.hpp"
#include "cchain/numeric.hpp"

#include <cstddef>
#include <vector>

namespace cchain {

/// Integer polynomial, ascending powers, no trailing zeros (zero is empty).
using IntPoly = std::vector<Integer>;

void trim(IntPoly& p);

/// Divides by the (positive) gcd of the coefficients.
IntPoly primitive_part(IntPoly p);

IntPoly derivative(const IntPoly& p);

/// Positive-rational multiple of p with integer coefficients.
IntPoly clear_denominators(const std::vector<Rational>& p);

/// Sign of p at the rational x, evaluated without leaving the integers.
int sign_at(const IntPoly& p, const Rational& x);

/// Sturm chain p, p', -rem(p, p'), ... built from primitive pseudo-remainders:
/// each member is reduced by a positive multiplier and stripped of its content,
/// which keeps coefficient growth polynomial.
class SturmChain {
 public:
  explicit SturmChain(IntPoly p);

  const std::vector<IntPoly>& polys() const { return chain_; }

  int variations_at(const Rational& x) const;
  int variations_at_neg_infinity() const;
  int variations_at_pos_infinity() const;

  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count_in(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<IntPoly> chain_;
  std::size_t max_degree_ = 0;
};

/// Number of distinct real roots of `poly` in (lo, hi]. Requires lo < hi and a
/// nonzero polynomial with exact coefficients.
int sturm_count(const PolySeq<Rational>& poly, const Rational& lo, const Rational& hi);
int sturm_count(const PolySeq<Integer>& poly, const Rational& lo, const Rational& hi);

// Certification needs exact coefficients.
int sturm_count(const PolySeq<double>&, const Rational&, const Rational&) = delete;
int sturm_count(const PolySeq<BigFloat>&, const Rational&, const Rational&) = delete;

/// Cauchy bound 1 + max_i |c_i / c_d|: every real root lies strictly inside
/// (-bound, bound).
Rational cauchy_bound(const IntPoly& p);

}  // namespace cchain
