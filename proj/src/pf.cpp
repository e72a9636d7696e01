#include "cchain/spectral.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace cchain {

namespace {

// The sequence a_j = p_{j+1}^(n) scaled to integers A_j = D a_j, together with
// long double copies of a_j.
struct ScaledSequence {
  std::vector<Rational> exact;
  std::vector<Integer> scaled;
  Integer scale;
  std::vector<long double> approx;
};

ScaledSequence scaled_sequence(unsigned n) {
  ScaledSequence s;
  s.exact = pmf_by_recurrence<Rational>(n).probs;
  s.scale = 1;
  for (const auto& a : s.exact) s.scale = lcm(s.scale, denominator(a));
  for (const auto& a : s.exact) {
    s.scaled.push_back(numerator(a) * (s.scale / denominator(a)));
    s.approx.push_back(a.convert_to<long double>());
  }
  return s;
}

// Fraction-free Gaussian elimination; returns det(m) exactly.
Integer bareiss(std::vector<std::vector<Integer>> m) {
  const std::size_t r = m.size();
  Integer prev(1);
  int flips = 1;
  for (std::size_t k = 0; k + 1 < r; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < r && m[p][k] == 0) ++p;
      if (p == r) return Integer(0);
      std::swap(m[k], m[p]);
      flips = -flips;
    }
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return flips * m[r - 1][r - 1];
}

class MinorSearch {
 public:
  MinorSearch(unsigned n, unsigned max_order)
      : n_(n), window_(n + max_order), seq_(scaled_sequence(n)) {
    report_.n = n;
    report_.max_minor_order_checked = max_order;
  }

  PfReport run() {
    for (unsigned r = 1; r <= report_.max_minor_order_checked; ++r) {
      order_ = r;
      cols_.assign(r, 0);
      rows_.assign(r, 0);
      choose_cols(1);
    }
    return std::move(report_);
  }

 private:
  static constexpr long double kUnit = std::numeric_limits<long double>::epsilon() / 2;
  static constexpr long double kTiny = 1e-4000L;

  long double entry(unsigned i, unsigned j) const {
    return i >= j && i - j < n_ ? seq_.approx[i - j] : 0.0L;
  }

  // Columns j_1 = 0 < j_2 < ... < j_r inside the window; the common shift of
  // rows and columns is factored out.
  void choose_cols(unsigned depth) {
    if (depth == order_) {
      det_[0][0] = 1;
      perm_[0][0] = 1;
      choose_row(0);
      return;
    }
    for (unsigned j = cols_[depth - 1] + 1; j < window_; ++j) {
      cols_[depth] = j;
      choose_cols(depth + 1);
    }
  }

  // Row i_{d+1}; minors of the first d+1 rows over every column subset are
  // obtained from those of the first d rows by expanding along the new row.
  void choose_row(unsigned d) {
    const unsigned lo = std::max(cols_[d], d == 0 ? 0u : rows_[d - 1] + 1);
    const unsigned hi = std::min(cols_[d] + n_ - 1, window_ - 1);
    for (unsigned i = lo; i <= hi; ++i) {
      rows_[d] = i;
      expand(d + 1);
      if (d + 1 == order_) {
        leaf();
      } else {
        choose_row(d + 1);
      }
    }
  }

  void expand(unsigned d) {
    const unsigned full = (1u << order_) - 1;
    const unsigned i = rows_[d - 1];
    for (unsigned mask = 1; mask <= full; ++mask) {
      if (static_cast<unsigned>(std::popcount(mask)) != d) continue;
      long double det = 0, perm = 0;
      unsigned pos = 0;
      for (unsigned c = 0; c < order_; ++c) {
        if (!(mask & (1u << c))) continue;
        const long double a = entry(i, cols_[c]);
        if (a != 0) {
          const unsigned rest = mask & ~(1u << c);
          const long double term = a * det_[d - 1][rest];
          det += ((d - 1 + pos) % 2 == 0) ? term : -term;
          perm += a * perm_[d - 1][rest];
        }
        ++pos;
      }
      det_[d][mask] = det;
      perm_[d][mask] = perm;
    }
  }

  void leaf() {
    ++report_.minors_checked;
    const unsigned full = (1u << order_) - 1;
    const long double det = det_[order_][full];
    const long double perm = perm_[order_][full];
    // Laplace expansion along successive rows: each level adds one rounding
    // for the entry, one for the product and d - 1 for the sum.
    const long double err = 2.0L * order_ * (order_ + 3) * kUnit * perm;
    const bool settled_positive = perm > kTiny && det - err > 0;
    if (settled_positive && have_min_ && det - err > best_upper_) return;
    evaluate_exactly();
  }

  void evaluate_exactly() {
    ++report_.exact_evaluations;
    std::vector<std::vector<Integer>> m(order_, std::vector<Integer>(order_));
    for (unsigned a = 0; a < order_; ++a) {
      for (unsigned b = 0; b < order_; ++b) {
        const unsigned i = rows_[a], j = cols_[b];
        m[a][b] = i >= j && i - j < n_ ? seq_.scaled[i - j] : Integer(0);
      }
    }
    Integer denom(1);
    for (unsigned k = 0; k < order_; ++k) denom *= seq_.scale;
    const Rational value(bareiss(std::move(m)), denom);
    if (sign(value) < 0) report_.violations.push_back({"minor", rows_, cols_, value});
    if (!have_min_ || value < report_.min_minor_value) {
      have_min_ = true;
      report_.min_minor_value = value;
      report_.min_rows = rows_;
      report_.min_cols = cols_;
      long double up = value.convert_to<long double>();
      up = std::nextafter(std::nextafter(up, HUGE_VALL), HUGE_VALL);
      best_upper_ = up;
    }
  }

  unsigned n_;
  unsigned window_;
  unsigned order_ = 0;
  ScaledSequence seq_;
  std::vector<unsigned> rows_, cols_;
  std::array<std::array<long double, 1u << kMaxPfOrder>, kMaxPfOrder + 1> det_{}, perm_{};
  bool have_min_ = false;
  long double best_upper_ = 0;
  PfReport report_;
};

}  // namespace

PfReport check_pf_minors(unsigned n, unsigned max_order) {
  if (n == 0) throw std::invalid_argument("PF check needs n >= 1");
  if (max_order < 1 || max_order > kMaxPfOrder) {
    throw std::invalid_argument("minor order must be in 1.." + std::to_string(kMaxPfOrder) + ", got " +
                                std::to_string(max_order));
  }
  return MinorSearch(n, max_order).run();
}

PfReport check_strong_log_concavity(unsigned n) {
  if (n < 3) throw std::invalid_argument("strong log-concavity needs n >= 3");
  const auto a = pmf_by_recurrence<Rational>(n).probs;
  const unsigned big_n = n - 1;
  PfReport report;
  report.n = n;
  bool first = true;
  for (unsigned k = 1; k + 1 <= big_n; ++k) {
    const Rational rhs = a[k - 1] * a[k + 1] * (Rational(1) + make_rational(1, k)) * (Rational(1) + make_rational(1, big_n - k));
    const Rational slack = a[k] * a[k] - rhs;
    ++report.minors_checked;
    if (sign(slack) < 0) {
      report.log_concavity_ok = false;
      report.violations.push_back({"log_concavity", {k}, {}, slack});
    }
    if (first || slack < report.min_minor_value) {
      first = false;
      report.min_minor_value = slack;
      report.min_rows = {k};
    }
  }
  return report;
}

}  // namespace cchain
