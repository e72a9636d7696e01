#include "cchain/spectral.hpp"

#include <doctest.h>

using namespace cchain;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

// Brute-force Toeplitz minors of (p_1, ..., p_n) padded with zeros: every
// row/column subset of the window whose diagonal entries are all nonzero.
// Minors with a zero on the diagonal of a banded lower-triangular pattern
// vanish identically.
Rational brute_min_minor(unsigned n, unsigned order) {
  const auto p = pmf_by_recurrence<Rational>(n).probs;
  const unsigned w = n + order;
  auto a = [&](int d) { return d >= 0 && d < static_cast<int>(n) ? p[d] : Rational(0); };
  Rational best = 1;
  std::vector<unsigned> rows(order), cols(order);
  for (unsigned r = 1; r <= order; ++r) {
    std::vector<bool> rmask(w), cmask(w);
    std::fill(rmask.begin(), rmask.begin() + r, true);
    do {
      std::fill(cmask.begin(), cmask.end(), false);
      std::fill(cmask.begin(), cmask.begin() + r, true);
      do {
        std::vector<unsigned> ri, ci;
        for (unsigned i = 0; i < w; ++i) {
          if (rmask[i]) ri.push_back(i);
          if (cmask[i]) ci.push_back(i);
        }
        bool banded = true;
        for (unsigned d = 0; d < r; ++d) banded = banded && ri[d] >= ci[d] && ri[d] - ci[d] < n;
        if (!banded) continue;
        std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r));
        for (unsigned i = 0; i < r; ++i)
          for (unsigned j = 0; j < r; ++j) m[i][j] = a(static_cast<int>(ri[i]) - static_cast<int>(ci[j]));
        // Gaussian elimination with row swaps.
        Rational det = 1;
        for (unsigned c = 0; c < r && det != 0; ++c) {
          unsigned piv = c;
          while (piv < r && m[piv][c] == 0) ++piv;
          if (piv == r) {
            det = 0;
            break;
          }
          if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
          }
          det *= m[c][c];
          for (unsigned i = c + 1; i < r; ++i) {
            const Rational f = m[i][c] / m[c][c];
            for (unsigned j = c; j < r; ++j) m[i][j] -= f * m[c][j];
          }
        }
        if (det < best) best = det;
      } while (std::prev_permutation(cmask.begin(), cmask.end()));
    } while (std::prev_permutation(rmask.begin(), rmask.end()));
  }
  return best;
}

}  // namespace

TEST_CASE("PF minors of tiny laws") {
  const auto one = check_pf_minors(1, 3);
  CHECK(one.ok());
  CHECK(one.min_minor_value >= 0);

  const auto two = check_pf_minors(2, 2);
  CHECK(two.ok());
  CHECK(two.min_minor_value >= 0);
  // det [[2/3, 0], [1/3, 2/3]] is one of the minors.
  CHECK(q(2, 3) * q(2, 3) - 0 * q(1, 3) == q(4, 9));
}

TEST_CASE("PF minimum matches brute force") {
  for (unsigned n : {2u, 3u, 4u, 5u}) {
    for (unsigned order : {1u, 2u, 3u}) {
      const auto r = check_pf_minors(n, order);
      CHECK(r.ok());
      CHECK(r.min_minor_value == brute_min_minor(n, order));
    }
  }
}

TEST_CASE("PF certificates at moderate n") {
  const auto r = check_pf_minors(12, 4);
  CHECK(r.ok());
  CHECK(r.max_minor_order_checked == 4);
  CHECK(r.min_minor_value >= 0);
  CHECK(r.minors_checked > 0);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(check_pf_minors(5, 7), std::invalid_argument);
  CHECK_THROWS_AS(check_pf_minors(5, 0), std::invalid_argument);
}

TEST_CASE("strong log-concavity") {
  // n = 3, k = 1: (4/9)^2 = 16/81 against (1/2)(1/18)(2)(2) = 1/9.
  CHECK(q(16, 81) >= q(1, 2) * q(1, 18) * 2 * 2);
  CHECK(q(87, 180) * q(87, 180) >= q(72, 180) * q(20, 180) * 2 * q(3, 2));
  const auto three = check_strong_log_concavity(3);
  CHECK(three.ok());
  CHECK(three.min_minor_value == q(16, 81) - q(1, 9));
  for (unsigned n = 3; n <= 100; n += 7) CHECK(check_strong_log_concavity(n).ok());
  CHECK(check_strong_log_concavity(100).ok());
  CHECK_THROWS_AS(check_strong_log_concavity(2), std::invalid_argument);
}
