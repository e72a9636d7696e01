#include "cchain/moments.hpp"

#include <doctest.h>

#include <cmath>

using namespace cchain;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

// Bernoulli(p) cumulants from the standard closed forms.
std::vector<Rational> bernoulli_cumulants(const Rational& p) {
  return {p, p * (1 - p), p * (1 - p) * (1 - 2 * p), p * (1 - p) * (1 - 6 * p + 6 * p * p)};
}

}  // namespace

TEST_CASE("closed forms at small n") {
  CHECK(mean_closed_form<Rational>(1) == 1);
  CHECK(mean_closed_form<Rational>(2) == q(4, 3));
  CHECK(mean_closed_form<Rational>(3) == q(14, 9));
  CHECK(second_moment_closed_form<Rational>(1) == 1);
  CHECK(second_moment_closed_form<Rational>(2) == 2);
  CHECK(variance_closed_form<Rational>(1) == 0);
  CHECK(variance_closed_form<Rational>(2) == q(2, 9));
  CHECK(third_cumulant_closed_form<Rational>(1) == 0);
  CHECK(third_cumulant_closed_form<Rational>(2) == q(2, 27));
}

TEST_CASE("closed forms equal the pgf route exactly") {
  for (unsigned n = 1; n <= 100; ++n) {
    const auto pgf = cumulants_from_pgf<Rational>(n, 3);
    const auto h = harmonic_cache<Rational>(n);
    CHECK(pgf.kappa(1) == mean_closed_form(h));
    CHECK(pgf.kappa(2) == variance_closed_form(h));
    CHECK(pgf.kappa(3) == third_cumulant_closed_form(h));
    CHECK(pgf.variance + pgf.mean * pgf.mean == second_moment_closed_form(h));
  }
}

TEST_CASE("HH2 telescopes") {
  // sum_{k<=n} H2(k) = (n + 1) H2(n) - H1(n).
  const auto table = harmonic_table<Rational>(2500);
  for (unsigned n : {1u, 2u, 10u, 333u, 2500u}) {
    const auto& h = table[n];
    CHECK(h.HH2 == (n + 1) * h.H2 - h.H1);
  }
  CHECK(harmonic_cache<Rational>(777).H1_over_k2 == table[777].H1_over_k2);
}

TEST_CASE("cumulants of 1 + Bernoulli(1/3)") {
  const auto r = cumulants_from_pgf<Rational>(2, 4);
  const auto b = bernoulli_cumulants(q(1, 3));
  CHECK(r.kappa(1) == 1 + b[0]);
  CHECK(r.kappa(2) == q(2, 9));
  CHECK(r.kappa(3) == q(2, 27));
  // (1/3)(2/3)(1 - 2 + 2/3) = -2/27.
  CHECK(b[3] == q(-2, 27));
  CHECK(r.kappa(4) == q(-2, 27));
}

TEST_CASE("degenerate law") {
  const auto r = cumulants_from_pgf<Rational>(1, 8);
  CHECK(r.kappa(1) == 1);
  for (unsigned k = 2; k <= 8; ++k) CHECK(r.kappa(k) == 0);
}

TEST_CASE("raw and cumulant conversions") {
  // Poisson(1): factorial moments are all 1, raw moments Bell numbers, cumulants 1.
  const std::vector<Rational> fm(6, Rational(1));
  const auto raw = raw_from_factorial(fm);
  CHECK(raw == std::vector<Rational>{1, 2, 5, 15, 52, 203});
  CHECK(cumulants_from_raw(raw) == fm);
  CHECK(stirling2_table()[12][3] == 86526);
}

TEST_CASE("floating backends") {
  const auto e = cumulants_from_pgf<Rational>(40, 6);
  const auto d = cumulants_from_pgf<double>(40, 6);
  BigFloatScope scope(50);
  const auto b = cumulants_from_pgf<BigFloat>(40, 6);
  for (unsigned k = 1; k <= 4; ++k) {
    CHECK(d.kappa(k) == doctest::Approx(to_double(e.kappa(k))).epsilon(1e-7));
    CHECK(abs(b.kappa(k) - to_bigfloat(e.kappa(k))) < BigFloat("1e-30"));
  }
  CHECK_THROWS(cumulants_from_pgf<Rational>(5, 13));
}

TEST_CASE("factorization route") {
  for (unsigned n : {2u, 3u, 10u, 30u, 50u}) {
    const auto f = bernoulli_factorization(n, parse_rational("1e-40"));
    const auto fc = cumulants_from_factorization(f, 4);
    const auto pgf = cumulants_from_pgf<Rational>(n, 4);
    for (unsigned k = 1; k <= 4; ++k) CHECK(abs(fc.cumulants[k - 1] - pgf.kappa(k)) <= fc.radius);
  }
  CHECK_THROWS(cumulants_from_factorization(bernoulli_factorization(3, q(1, 100)), 5));
}

TEST_CASE("cumulant bound") {
  const auto two = cumulant_bound_report(2, 8);
  REQUIRE(two.size() == 6);
  CHECK(two[0].k == 3);
  CHECK(two[0].lhs == doctest::Approx((2.0 / 27) / std::pow(2.0 / 9, 1.5)));
  // Equals 1/sqrt(2) exactly.
  CHECK(two[0].lhs == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(two[0].rhs == 108);
  for (unsigned n : {2u, 10u, 57u, 100u})
    for (const auto& e : cumulant_bound_report(n, 8)) CHECK(e.ok);
  CHECK_THROWS(cumulant_bound_report(1, 4));
  CHECK_THROWS(cumulant_bound_report(5, 2));
}

TEST_CASE("asymptotic ratios") {
  BigFloatScope scope(40);
  const auto small = asymptotic_ratios(10);
  const auto large = asymptotic_ratios(1'000'000);
  const double m = to_double(large.mean_ratio), v = to_double(large.var_ratio), c = to_double(large.kappa3_ratio);
  CHECK(m == doctest::Approx(1.07797).epsilon(1e-5));
  CHECK(v == doctest::Approx(0.981987).epsilon(1e-5));
  CHECK(c == doctest::Approx(0.949764).epsilon(1e-5));
  CHECK(v >= 0.8);
  CHECK(v <= 1.2);
  CHECK(m >= 0.95);
  CHECK(m <= 1.1);
  CHECK(std::abs(m - 1) < std::abs(to_double(small.mean_ratio) - 1));
  CHECK(std::abs(v - 1) < std::abs(to_double(small.var_ratio) - 1));
  CHECK(std::abs(c - 1) < std::abs(to_double(small.kappa3_ratio) - 1));
}
