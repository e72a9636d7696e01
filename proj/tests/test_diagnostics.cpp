#include "cchain/diagnostics.hpp"
#include "cchain/moments.hpp"

#include <doctest.h>

#include <cmath>

using namespace cchain;

namespace {

double upper_tail(double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("standardized lattice at n = 2") {
  BigFloatScope scope(40);
  const auto lat = normalized_lattice(2, Backend::exact());
  REQUIRE(lat.points.size() == 2);
  const BigFloat s2 = sqrt(BigFloat(2));
  CHECK(abs(lat.points[0].t + 1 / s2) < BigFloat("1e-35"));
  CHECK(abs(lat.points[1].t - s2) < BigFloat("1e-35"));
  CHECK(abs(lat.points[0].mass - BigFloat(2) / 3) < BigFloat("1e-35"));
}

TEST_CASE("standardization contract") {
  for (unsigned n : {2u, 7u, 100u, 2000u}) {
    const auto lat = normalized_lattice(n, Backend::bigfloat(40));
    BigFloat m = 0, v = 0, total = 0;
    for (const auto& p : lat.points) {
      total += p.mass;
      m += p.mass * p.t;
      v += p.mass * p.t * p.t;
    }
    CHECK(abs(total - 1) < BigFloat("1e-30"));
    CHECK(abs(m) < BigFloat("1e-12"));
    CHECK(abs(v - 1) < BigFloat("1e-12"));
  }
  const auto big = normalized_lattice(10'000, Backend::float64());
  BigFloat total = 0;
  for (const auto& p : big.points) total += p.mass;
  CHECK(abs(total - 1) < BigFloat("1e-9"));
}

TEST_CASE("Kolmogorov distance at n = 2 by brute force") {
  // Atoms t1 = -1/sqrt2 (mass 2/3), t2 = sqrt2 (mass 1/3). P(X >= t) is 1
  // up to t1, 1/3 on (t1, t2] and 0 beyond; the sup sits at one of the four
  // one-sided limits.
  const double t1 = -1 / std::sqrt(2.0), t2 = std::sqrt(2.0);
  const double d = std::max({std::abs(1 - upper_tail(t1)), std::abs(1.0 / 3 - upper_tail(t1)),
                             std::abs(1.0 / 3 - upper_tail(t2)), std::abs(0 - upper_tail(t2))});
  CHECK(to_double(kolmogorov_distance(2, Backend::exact())) == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("Berry-Esseen bound and trend") {
  double prev = 1;
  for (unsigned n : {10u, 100u, 1000u, 10'000u}) {
    const double d = to_double(kolmogorov_distance(n, Backend::float64()));
    CHECK(d <= 72 / std::sqrt(std::log(double(n))));
    CHECK(d < prev);
    prev = d;
  }
  CHECK(to_double(kolmogorov_distance(10, Backend::exact())) == doctest::Approx(0.253331).epsilon(1e-5));
}

TEST_CASE("mod-Gaussian profile") {
  BigFloatScope scope(40);
  const auto two = mod_gaussian_profile(2, {0.0, 1.0}, Backend::exact());
  CHECK(two.log_ratio[0] == 0);
  // Direct two-term sum with L = (2/27)^(1/3).
  const double L = std::cbrt(2.0 / 27), s2 = 2.0 / 9;
  const double phi = (2.0 / 3) * std::exp(-1.0 / 3 / L) + (1.0 / 3) * std::exp(2.0 / 3 / L);
  CHECK(to_double(two.log_ratio[1]) == doctest::Approx(std::log(phi) - s2 / (L * L) / 2).epsilon(1e-12));
  CHECK(to_double(two.psi_target[1]) == doctest::Approx(1.0 / 6));

  for (unsigned n : {10u, 100u, 1000u}) {
    const auto p = mod_gaussian_profile(n, {0.0}, Backend::float64());
    CHECK(p.log_ratio[0] == 0);
  }
  // Distances to 1/6 at z = 1 are not monotone on this grid; frozen values.
  const double d100 = to_double(mod_gaussian_profile(100, {1.0}, Backend::float64()).log_ratio[0]) - 1.0 / 6;
  const double d1000 = to_double(mod_gaussian_profile(1000, {1.0}, Backend::float64()).log_ratio[0]) - 1.0 / 6;
  CHECK(d100 == doctest::Approx(0.0155917).epsilon(1e-4));
  CHECK(d1000 == doctest::Approx(0.016623).epsilon(1e-4));
  CHECK_THROWS(mod_gaussian_profile(10, {2.5}, Backend::float64()));
  CHECK_THROWS(mod_gaussian_profile(1, {0.5}, Backend::float64()));
}

TEST_CASE("cumulants of Y_n") {
  BigFloatScope scope(60);
  const auto two = kappa4_of_Yn(2, Backend::bigfloat(60));
  const BigFloat expected = BigFloat(-2) / 27 / pow(BigFloat(2) / 27, BigFloat(4) / 3);
  CHECK(abs(two.kappa4 - expected) < BigFloat("1e-40"));
  CHECK(to_double(two.kappa4) == doctest::Approx(-2.3811).epsilon(1e-4));
  double prev = 1e9;
  for (unsigned n : {1000u, 10'000u, 100'000u}) {
    const auto y = kappa4_of_Yn(n, Backend::bigfloat(60));
    CHECK(abs(y.kappa3 - 1) < BigFloat("1e-20"));
    const double k4 = std::abs(to_double(y.kappa4));
    CHECK(k4 < prev);
    prev = k4;
  }
}

TEST_CASE("moderate deviations") {
  const auto far = moderate_deviation_profile(10, 50.0, Backend::float64());
  CHECK(far.upper_beyond_support);
  CHECK(far.lhs_upper == 0);
  CHECK(!far.log_lhs_upper());
  const auto md = moderate_deviation_profile(10'000, 0.5, Backend::float64());
  REQUIRE(md.ratio_upper());
  CHECK(*md.ratio_upper() > 0);
  CHECK(to_double(*md.ratio_upper()) == doctest::Approx(0.4852).epsilon(1e-3));
  CHECK(to_double(*md.ratio_lower()) == doctest::Approx(0.6530).epsilon(1e-3));
  CHECK_THROWS(moderate_deviation_profile(10, 0.0, Backend::float64()));
}

TEST_CASE("local limit window") {
  const auto zero = local_limit_profile(100, 0.25, 0.0, {{Rational(0), Rational(0)}}, Backend::float64());
  CHECK(zero.scaled_prob == 0);
  CHECK(zero.target_density_mass == 0);
  const auto ll = local_limit_profile(10'000, 0.25, 0.0, {{Rational(-1), Rational(1)}}, Backend::float64());
  const double target = 2 / std::sqrt(2 * M_PI);
  CHECK(to_double(ll.target_density_mass) == doctest::Approx(target));
  CHECK(to_double(ll.scaled_prob) > target / 2);
  CHECK(to_double(ll.scaled_prob) < target * 2);
  CHECK(to_double(ll.scaled_prob) == doctest::Approx(0.5451).epsilon(1e-3));
  CHECK(jordan_measure({{make_rational(0), make_rational(2)}, {make_rational(1), make_rational(3)}}) == 3);
  CHECK_THROWS(local_limit_profile(100, 0.25, 0.0, {}, Backend::float64()));
  CHECK_THROWS(local_limit_profile(100, 0.5, 0.0, {{Rational(-1), Rational(1)}}, Backend::float64()));
}
