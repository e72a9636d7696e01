#pragma once

// Finite-n limit-theorem diagnostics for the standardized vertex number:
// Kolmogorov distance to the normal law, the mod-Gaussian profile, cumulants
// of Y_n = (f_0 - E f_0) / L_n, moderate-deviation tails and the local limit
// window probability.
//
// The pmf comes from the requested backend; everything downstream runs in
// BigFloat at max(backend digits, 40) decimal digits. Mean, sigma and L_n are
// taken from the closed forms.

#include "cchain/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cchain {

inline constexpr unsigned kDiagnosticDigits = 40;

struct LatticePoint {
  BigFloat t;     // (k - mean) / sigma
  BigFloat mass;  // p_k^(n)
};

struct NormalizedLattice {
  unsigned n = 0;
  BigFloat mean;
  BigFloat sigma;
  std::vector<LatticePoint> points;  // k = 1..n
};

NormalizedLattice normalized_lattice(unsigned n, const Backend& backend);

/// sup_t |P(X >= t) - P(Z >= t)|, X the standardized vertex number.
BigFloat kolmogorov_distance(unsigned n, const Backend& backend);

struct ModGaussianProfile {
  unsigned n = 0;
  BigFloat L;    // kappa_3^(1/3)
  BigFloat w_n;  // sigma^2 / L^2
  std::vector<double> z_grid;
  std::vector<BigFloat> log_ratio;   // log phi_n(z) - w_n z^2 / 2
  std::vector<BigFloat> psi_target;  // z^3 / 6
};

/// z values must lie in [-2, 2].
ModGaussianProfile mod_gaussian_profile(unsigned n, const std::vector<double>& z_grid, const Backend& backend);

struct YnCumulants {
  BigFloat kappa3;  // equals 1 up to rounding
  BigFloat kappa4;
};

/// kappa_3 and kappa_4 of Y_n from factorial moments of G_n, L_n from the
/// closed-form third cumulant.
YnCumulants kappa4_of_Yn(unsigned n, const Backend& backend);

struct ModerateDeviation {
  unsigned n = 0;
  double x = 0;
  BigFloat t_n;        // sigma^2 / L^2
  BigFloat threshold;  // sqrt(t_n) x
  BigFloat lhs_upper;  // P(X >= sqrt(t_n) x)
  BigFloat lhs_lower;  // P(X <= -sqrt(t_n) x)
  BigFloat rhs_upper;  // exp(-t_n x^2 / 2) / (x sqrt(2 pi t_n)) exp(x^3 / 6)
  BigFloat rhs_lower;  // same with exp(-x^3 / 6)
  bool upper_beyond_support = false;
  bool lower_beyond_support = false;

  /// Natural logs; empty when the probability is zero.
  std::optional<BigFloat> log_lhs_upper() const;
  std::optional<BigFloat> log_lhs_lower() const;
  std::optional<BigFloat> ratio_upper() const;
  std::optional<BigFloat> ratio_lower() const;
};

ModerateDeviation moderate_deviation_profile(unsigned n, double x, const Backend& backend);

/// Finite union of closed intervals [lo, hi].
using Window = std::vector<std::pair<Rational, Rational>>;

/// Total length of the union.
Rational jordan_measure(const Window& window);

struct LocalLimit {
  BigFloat scaled_prob;          // (log n)^-delta P(X - x in (log n)^delta B)
  BigFloat target_density_mass;  // exp(-x^2/2) / sqrt(2 pi) J(B)
};

inline constexpr double kDefaultDelta = 0.25;

LocalLimit local_limit_profile(unsigned n, double delta, double x, const Window& window, const Backend& backend);

/// Standard normal upper tail P(Z >= t), via erfc at the current precision.
BigFloat normal_upper_tail(const BigFloat& t);

}  // namespace cchain
