#pragma once

// Roots of G_n: certified isolation and refinement, the Bernoulli
// factorization of the vertex-number law, and total-positivity checks of the
// probability sequence.

#include "cchain/exact_core.hpp"
#include "cchain/numeric.hpp"
#include "cchain/sturm.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cchain {

/// Raised when a root count disagrees with the real-rootedness theorem.
class CertificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Closed interval [lo, hi] holding exactly one root. lo == hi means the root
/// is known exactly; otherwise neither endpoint is a root.
struct RootEnclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool exact() const { return lo == hi; }
};

/// The n roots r_1 = 0 > r_2 > ... > r_n of G_n, enclosures sorted by
/// decreasing midpoint.
struct RootEnclosureSet {
  unsigned n = 0;
  std::vector<RootEnclosure> enclosures;
};

/// Sturm chain of K_n = H_n / z given by the monic recurrence itself,
/// K_n, K_{n-1}, ..., K_1 = 1. Evaluating it is O(n) integer operations.
class RecurrenceChain {
 public:
  explicit RecurrenceChain(unsigned n);

  unsigned n() const { return n_; }
  int variations_at(const Rational& x) const;
  /// Sign of G_n(x) (equivalently H_n(x)).
  int pgf_sign(const Rational& x) const;
  /// Sign of K_n(x); nonzero at x = 0.
  int reduced_sign(const Rational& x) const;
  int count_in(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<int> signs_at(const Rational& x) const;
  unsigned n_;
};

/// n disjoint Sturm-certified enclosures, one per root of G_n. Throws
/// CertificationError if any count disagrees with n distinct roots in
/// (-inf, 0].
RootEnclosureSet isolate_roots(unsigned n);

/// Bisects every inexact enclosure until its width is at most target_width.
RootEnclosureSet refine_roots(const RootEnclosureSet& set, const Rational& target_width);

/// Re-runs the certification of `set` against an independent primitive
/// pseudo-remainder Sturm chain of H_n. Throws CertificationError on failure.
void certify_enclosures(const RootEnclosureSet& set);

/// True iff the roots of G_{n-1} other than 0 strictly interlace those of G_n.
bool roots_interlace(unsigned n);

/// f_0(T_n) = sum_k B_k, B_k ~ Bernoulli(1 / (1 - r_k)).
struct BernoulliFactorization {
  unsigned n = 0;
  std::vector<Rational> success_probs;  // midpoints, success_probs[0] == 1
  std::vector<Rational> error_radii;    // |true q_k - success_probs[k]| <= error_radii[k]
};

BernoulliFactorization bernoulli_factorization(unsigned n, const Rational& target_width);

/// Law of 1 + B_2 + ... + B_n by sequential convolution, O(n^2).
template <class T>
VertexPmf<T> reconstruct_pmf(const BernoulliFactorization& f);

struct PfViolation {
  std::string kind;            // "minor" or "log_concavity"
  std::vector<unsigned> rows;  // minor rows, or {k} for log-concavity
  std::vector<unsigned> cols;
  Rational value;              // negative minor, or lhs - rhs
};

struct PfReport {
  unsigned n = 0;
  unsigned max_minor_order_checked = 0;
  /// Smallest minor found, or the smallest log-concavity slack a_k^2 - rhs.
  Rational min_minor_value;
  std::vector<unsigned> min_rows;
  std::vector<unsigned> min_cols;
  std::size_t minors_checked = 0;
  std::size_t exact_evaluations = 0;
  bool log_concavity_ok = true;
  std::vector<PfViolation> violations;

  bool ok() const { return violations.empty(); }
};

inline constexpr unsigned kMaxPfOrder = 6;

/// Every minor of order <= max_order of the Toeplitz matrix (a_{i-j}) with
/// a_j = p_{j+1}^(n), rows and columns in [0, n + max_order). Minors that are
/// identically zero by the band structure are skipped and common index shifts
/// are factored out. Each value is bounded in floating point first; minors
/// whose sign or rank against the running minimum is not settled by the bound
/// are evaluated exactly.
PfReport check_pf_minors(unsigned n, unsigned max_order);

/// a_k^2 >= a_{k-1} a_{k+1} (1 + 1/k)(1 + 1/(N-k)) for k = 1..N-1, with
/// a_j = p_{j+1}^(n), N = n - 1. Exact.
PfReport check_strong_log_concavity(unsigned n);

}  // namespace cchain
