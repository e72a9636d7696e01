#pragma once

// Distribution of the vertex number f_0(T_n) of the random convex chain in the
// right triangle, computed by three independent routes:
//
//   * the three-term pgf recurrence  G_n = (a_n z + b_n) G_{n-1} - c_n G_{n-2},
//   * brute-force summation over integer compositions of n,
//   * the weighted representation    G_n = z + (z - 1) sum_k w_{k,n} G_k,
//
// plus the monic family H_n = G_n / p_n^(n), value-level pgf evaluation and
// factorial moments G_n^{(j)}(1).
//
// All functions are pure; results are immutable values.

#include "cchain/numeric.hpp"

#include <cstddef>
#include <vector>

namespace cchain {

/// Largest n accepted by the composition oracle (2^(n-1) compositions).
inline constexpr unsigned kCompositionCap = 24;

/// Largest derivative order handled by factorial_moments.
inline constexpr unsigned kMaxMomentOrder = 12;

/// Law of f_0(T_n): probs[k - 1] = P(f_0(T_n) = k) for k = 1..n.
template <class T>
struct VertexPmf {
  unsigned n = 0;
  std::vector<T> probs;
  Backend backend;

  /// 1-based access, k in 1..n.
  const T& at(unsigned k) const { return probs.at(k - 1); }
};

enum class Family { G, H };

/// Dense polynomial, coeffs[i] multiplies z^i.
template <class T>
struct PolySeq {
  Family family = Family::G;
  std::vector<T> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Recurrence data for step n >= 2 of both the G and the H recurrence.
struct RecurrenceCoeffs {
  unsigned n = 0;
  Rational a;      // 2 / (n (n+1))
  Rational b;      // 2 (n-1) / (n+1)
  Rational c;      // (n-1)(n-2) / (n (n+1))
  Rational beta;   // n (n-1)
  Rational gamma;  // n (n-1)^2 (n-2) / 4
};

RecurrenceCoeffs recurrence_coeffs(unsigned n);

/// p_n^(n) = 2^n / (n! (n+1)!).
Rational top_probability(unsigned n);

/// G_n in the monomial basis from the three-term recurrence (n >= 0, G_0 = 1).
template <class T>
PolySeq<T> pgf_by_recurrence(unsigned n);

/// G_0..G_nmax from a single pass of the recurrence.
template <class T>
std::vector<PolySeq<T>> pgf_table_by_recurrence(unsigned nmax);

/// The vertex-number law. Exact and bigfloat backends iterate the three-term
/// recurrence; float64 evaluates the equivalent first-order form
///   p_k^(m) = 2/(m(m+1)) sum_{j<m} (m - j) p_{k-1}^(j)
/// through running sums, which involves no subtraction and keeps the total
/// mass within a few ulps of one for large n.
template <class T>
VertexPmf<T> pmf_by_recurrence(unsigned n);

/// Brute-force evaluation of the explicit composition formula. Exact.
VertexPmf<Rational> pmf_direct_compositions(unsigned n, unsigned cap = kCompositionCap);

/// w_{k,n} = 2k(k+1) sum_{i=k+1}^{n} 1 / (i^2 (i^2 - 1)),  1 <= k <= n-1.
Rational weight(unsigned k, unsigned n);

/// G_n through the weighted representation, lower orders memoized.
VertexPmf<Rational> pmf_by_weights(unsigned n);

/// G_0..G_nmax through the weighted representation only (no recurrence).
std::vector<PolySeq<Rational>> pgf_table_by_weights(unsigned nmax);

/// Monic H_n = (z + beta_n) H_{n-1} - gamma_n H_{n-2}, integer coefficients.
PolySeq<Integer> monic_poly(unsigned n);

/// H_0..H_nmax.
std::vector<PolySeq<Integer>> monic_table(unsigned nmax);

/// G_n(z) by the scalar recurrence, O(n). Throws std::overflow_error when a
/// float64 evaluation leaves the finite range.
template <class T>
T pgf_eval(unsigned n, const T& z);

/// (G_n^{(j)}(1))_{j=1..kmax}, i.e. the factorial moments E[(f_0)_j].
template <class T>
std::vector<T> factorial_moments(unsigned n, unsigned kmax);

template <class T>
PolySeq<T> to_pgf(const VertexPmf<T>& pmf) {
  PolySeq<T> g;
  g.family = Family::G;
  g.coeffs.reserve(pmf.n + 1);
  g.coeffs.push_back(from_int<T>(0));
  g.coeffs.insert(g.coeffs.end(), pmf.probs.begin(), pmf.probs.end());
  return g;
}

template <class T>
VertexPmf<T> to_pmf(const PolySeq<T>& g) {
  VertexPmf<T> pmf;
  pmf.n = static_cast<unsigned>(g.degree());
  pmf.probs.assign(g.coeffs.begin() + 1, g.coeffs.end());
  pmf.backend = backend_of<T>();
  return pmf;
}

}  // namespace cchain
