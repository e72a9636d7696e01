#pragma once

// Closed-form moments and cumulants of f_0(T_n), cumulants of any order up to
// 12 from the pgf, the Bernoulli-factorization route and the cumulant bound
// used for large deviations.
//
// Templates are instantiated for Rational, double and BigFloat. BigFloat
// results use the precision of the caller's BigFloatScope.

#include "cchain/exact_core.hpp"
#include "cchain/numeric.hpp"
#include "cchain/spectral.hpp"

#include <string>
#include <vector>

namespace cchain {

/// Harmonic sums up to n.
template <class T>
struct HarmonicCache {
  unsigned n = 0;
  T H1;   // sum 1/k
  T H2;   // sum 1/k^2
  T H3;   // sum 1/k^3
  T HH2;  // sum_{k<=n} H2(k)
  T H1_over_k2;  // sum_{k<=n} H1(k) / k^2, the double sum in the third cumulant
};

template <class T>
HarmonicCache<T> harmonic_cache(unsigned n);

/// Caches for 0..nmax from one pass.
template <class T>
std::vector<HarmonicCache<T>> harmonic_table(unsigned nmax);

/// (2/3) H1 + 1/3.
template <class T>
T mean_closed_form(const HarmonicCache<T>& h);

/// (4/9) H1^2 + (22/27) H1 + (4/9) H2 - 25/27 + 4/(9(n+1)).
template <class T>
T second_moment_closed_form(const HarmonicCache<T>& h);

/// (10/27) H1 + (4/9) H2 - 28/27 + 4/(9(n+1)).
template <class T>
T variance_closed_form(const HarmonicCache<T>& h);

/// (14/81) H1 + (20/27) H2 + (16/27) H3 - (16/9) sum_k H1(k)/k^2 + 172/81
///   - (8/9)(1/n + 1/(n+1)) H1 - 28/(27(n+1)).
template <class T>
T third_cumulant_closed_form(const HarmonicCache<T>& h);

template <class T>
T mean_closed_form(unsigned n) { return mean_closed_form(harmonic_cache<T>(n)); }
template <class T>
T second_moment_closed_form(unsigned n) { return second_moment_closed_form(harmonic_cache<T>(n)); }
template <class T>
T variance_closed_form(unsigned n) { return variance_closed_form(harmonic_cache<T>(n)); }
template <class T>
T third_cumulant_closed_form(unsigned n) { return third_cumulant_closed_form(harmonic_cache<T>(n)); }

enum class CumulantSource { closed_form, pgf, factorization };

std::string to_string(CumulantSource s);

template <class T>
struct CumulantReport {
  unsigned n = 0;
  T mean;
  T variance;
  T L_cubed;               // kappa_3
  std::vector<T> cumulants;  // cumulants[k - 1] = kappa_k, k = 1..kmax
  CumulantSource source = CumulantSource::pgf;
  Backend backend;

  unsigned kmax() const { return static_cast<unsigned>(cumulants.size()); }
  const T& kappa(unsigned k) const { return cumulants.at(k - 1); }
};

/// Stirling numbers of the second kind S(k, j), 0 <= j <= k <= 12.
const std::vector<std::vector<Integer>>& stirling2_table();

/// Raw moments E X^k, k = 1..K, from factorial moments E (X)_j, j = 1..K.
template <class T>
std::vector<T> raw_from_factorial(const std::vector<T>& factorial);

/// Cumulants kappa_1..kappa_K from raw moments m_1..m_K.
template <class T>
std::vector<T> cumulants_from_raw(const std::vector<T>& raw);

/// Cumulants up to max(kmax, 3) through factorial moments of G_n.
template <class T>
CumulantReport<T> cumulants_from_pgf(unsigned n, unsigned kmax);

/// Mean, variance and kappa_3 from the closed forms.
template <class T>
CumulantReport<T> cumulants_closed_form(unsigned n);

/// Sum of per-Bernoulli cumulants at the success-probability midpoints.
/// On [0, 1] each of kappa_1..kappa_4 of a Bernoulli(q) law is 1-Lipschitz
/// in q, so every cumulant is within `radius` = sum of error radii of the
/// true value.
struct FactorizationCumulants {
  std::vector<Rational> cumulants;  // kappa_1..kappa_kmax at the midpoints
  Rational radius;
};

inline constexpr unsigned kMaxFactorizationOrder = 4;

FactorizationCumulants cumulants_from_factorization(const BernoulliFactorization& f, unsigned kmax);

struct CumulantBoundEntry {
  unsigned k = 0;
  double lhs = 0;     // |kappa_k| / sigma^k
  Rational rhs;       // k! (4 / sigma^2)^(k-2)
  bool ok = false;    // decided exactly: kappa_k^2 <= rhs^2 sigma^(2k)
};

/// The bound |kappa_k((f_0 - E f_0) / sigma)| <= k! (4 / sigma^2)^(k-2) for
/// k = 3..kmax, exact cumulants.
std::vector<CumulantBoundEntry> cumulant_bound_report(unsigned n, unsigned kmax);

struct AsymptoticRatios {
  BigFloat mean_ratio;    // E f_0 / ((2/3) ln n)
  BigFloat var_ratio;     // sigma^2 / ((10/27) ln n)
  BigFloat kappa3_ratio;  // L^3 / ((14/81) ln n)
};

AsymptoticRatios asymptotic_ratios(unsigned n);

}  // namespace cchain
