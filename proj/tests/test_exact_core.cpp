#include "cchain/exact_core.hpp"

#include <doctest.h>

#include <cmath>

using namespace cchain;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

std::vector<Rational> scaled(std::initializer_list<long long> nums, long long den) {
  std::vector<Rational> out;
  for (auto v : nums) out.push_back(q(v, den));
  return out;
}

Rational factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

}  // namespace

TEST_CASE("printed small laws") {
  CHECK(pmf_by_recurrence<Rational>(1).probs == scaled({1}, 1));
  CHECK(pmf_by_recurrence<Rational>(2).probs == scaled({2, 1}, 3));
  CHECK(pmf_by_recurrence<Rational>(3).probs == scaled({9, 8, 1}, 18));
  CHECK(pmf_by_recurrence<Rational>(4).probs == scaled({72, 87, 20, 1}, 180));
  CHECK(pmf_by_recurrence<Rational>(6).probs == scaled({16200, 27810, 11142, 1477, 70, 1}, 56700));
}

TEST_CASE("three routes agree exactly") {
  for (unsigned n = 1; n <= 14; ++n) {
    const auto rec = pmf_by_recurrence<Rational>(n).probs;
    CHECK(pmf_direct_compositions(n).probs == rec);
    CHECK(pmf_by_weights(n).probs == rec);
  }
  CHECK(pmf_direct_compositions(3).at(3) == q(1, 18));
  CHECK(pmf_direct_compositions(2).at(1) == q(2, 3));
  CHECK_THROWS_AS(pmf_direct_compositions(25), std::invalid_argument);
}

TEST_CASE("normalization and top probability") {
  for (unsigned n = 1; n <= 60; ++n) {
    const auto p = pmf_by_recurrence<Rational>(n);
    Rational total = 0;
    for (const auto& x : p.probs) total += x;
    CHECK(total == 1);
    const Rational top = pow2(n) / (factorial(n) * factorial(n + 1));
    CHECK(p.at(n) == top);
    CHECK(top_probability(n) == top);
  }
}

TEST_CASE("weights") {
  CHECK(weight(1, 2) == q(1, 3));
  CHECK(weight(1, 3) == q(7, 18));
  for (unsigned n = 2; n <= 20; ++n) CHECK(weight(n - 1, n) == q(2, n * (n + 1)));
  CHECK_THROWS(weight(2, 2));
  CHECK_THROWS(weight(0, 3));
}

TEST_CASE("monic polynomials") {
  auto coeffs = [](unsigned n) {
    std::vector<long long> out;
    for (const auto& c : monic_poly(n).coeffs) out.push_back(c.convert_to<long long>());
    return out;
  };
  CHECK(coeffs(0) == std::vector<long long>{1});
  CHECK(coeffs(1) == std::vector<long long>{0, 1});
  CHECK(coeffs(2) == std::vector<long long>{0, 2, 1});
  CHECK(coeffs(3) == std::vector<long long>{0, 9, 8, 1});
  for (unsigned n = 1; n <= 100; ++n) {
    const auto h = monic_poly(n);
    const auto g = pgf_by_recurrence<Rational>(n);
    const Rational top = top_probability(n);
    REQUIRE(h.coeffs.size() == g.coeffs.size());
    bool same = true;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i) same = same && Rational(h.coeffs[i]) * top == g.coeffs[i];
    CHECK(same);
  }
}

TEST_CASE("pgf evaluation") {
  for (unsigned n = 1; n <= 200; ++n) CHECK(pgf_eval<Rational>(n, Rational(1)) == 1);
  CHECK(pgf_eval<Rational>(2, Rational(-2)) == 0);
  CHECK(pgf_eval<Rational>(4, q(1, 2)) == (q(1, 8) + 20 * q(1, 4) + 87 * q(1, 2) + 72) * q(1, 2) / 180);
  const double r = -4 + std::sqrt(7.0);
  CHECK(std::abs(pgf_eval<double>(3, r)) <= 10 * std::numeric_limits<double>::epsilon());
  {
    BigFloatScope scope(50);
    const BigFloat rb = BigFloat(-4) + sqrt(BigFloat(7));
    CHECK(abs(pgf_eval<BigFloat>(3, rb)) < BigFloat("1e-45"));
  }
}

TEST_CASE("float64 and bigfloat pmfs track the exact law") {
  for (unsigned n : {2u, 10u, 50u, 150u}) {
    const auto exact = pmf_by_recurrence<Rational>(n);
    const auto f = pmf_by_recurrence<double>(n);
    BigFloatScope scope(40);
    const auto b = pmf_by_recurrence<BigFloat>(n);
    for (unsigned k = 1; k <= n; ++k) {
      const double e = to_double(exact.at(k));
      // Entries below the normal range carry no relative accuracy.
      if (e > 1e-290) CHECK(std::abs(f.at(k) - e) <= 1e-12 * e);
      CHECK(abs(b.at(k) - to_bigfloat(exact.at(k))) <= BigFloat("1e-35") * to_bigfloat(exact.at(k)));
    }
  }
  CHECK(pmf_by_recurrence<double>(1).backend == Backend::float64());
}

TEST_CASE("factorial moments") {
  auto one = factorial_moments<Rational>(1, 4);
  CHECK(one == std::vector<Rational>{1, 0, 0, 0});
  CHECK(factorial_moments<Rational>(3, 1)[0] == q(14, 9));
  CHECK(factorial_moments<Rational>(2, 2)[1] == q(2, 3));
  // Direct differentiation of the printed G_6.
  const auto g = pgf_by_recurrence<Rational>(6).coeffs;
  const auto fm = factorial_moments<Rational>(6, 6);
  for (unsigned j = 1; j <= 6; ++j) {
    Rational d = 0;
    for (unsigned k = j; k < g.size(); ++k) {
      Rational falling = 1;
      for (unsigned i = 0; i < j; ++i) falling *= k - i;
      d += falling * g[k];
    }
    CHECK(fm[j - 1] == d);
  }
  CHECK_THROWS(factorial_moments<Rational>(3, 13));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(pmf_by_recurrence<Rational>(0), std::invalid_argument);
  CHECK_THROWS_AS(pmf_by_weights(0), std::invalid_argument);
}
