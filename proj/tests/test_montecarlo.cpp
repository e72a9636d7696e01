#include "cchain/moments.hpp"
#include "cchain/montecarlo.hpp"

#include <doctest.h>

using namespace cchain;

TEST_CASE("reflection into the triangle") {
  const Point a = reflect_into_triangle(0.2, 0.3);
  CHECK(a.x == 0.2);
  CHECK(a.y == 0.3);
  const Point b = reflect_into_triangle(0.8, 0.7);
  CHECK(b.x == doctest::Approx(0.2));
  CHECK(b.y == doctest::Approx(0.3));
}

TEST_CASE("uniform sampling has the right centroid") {
  std::mt19937_64 rng(chunk_seed(7, 0));
  double sx = 0;
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) {
    const Point p = sample_triangle_point(rng);
    REQUIRE(p.x + p.y <= 1);
    sx += p.x;
  }
  CHECK(std::abs(sx / draws - 1.0 / 3) < 0.001);
}

TEST_CASE("orientation is exact") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
  // Nearly collinear triples where naive evaluation can round either way.
  const double e = std::ldexp(1.0, -52);
  CHECK(orientation({0.5, 0.5}, {12, 12}, {24, 24}) == 0);
  CHECK(orientation({0.5, 0.5 + e}, {12, 12}, {24, 24}) == 1);
}

TEST_CASE("vertex counts by hand") {
  CHECK(chain_vertex_count({{0.3, 0.3}}) == 1);
  CHECK(chain_vertex_count({{0.1, 0.1}, {0.4, 0.4}}) == 1);
  CHECK(chain_vertex_count({{0.05, 0.6}, {0.6, 0.05}}) == 2);
  // Collinear middle point is dropped.
  CHECK(chain_vertex_count({{0.1, 0.1}, {0.2, 0.2}, {0.25, 0.25}}) == 1);
}

TEST_CASE("simulation support and determinism") {
  const auto one = run_simulation({1, 5000, 3, 1});
  CHECK(one.counts[0] == 5000);
  const auto a = run_simulation({6, 100'000, 11, 1});
  const auto b = run_simulation({6, 100'000, 11, 3});
  CHECK(a.counts == b.counts);
  std::uint64_t total = 0;
  for (auto c : a.counts) total += c;
  CHECK(total == 100'000);
  CHECK(run_simulation({6, 100'000, 12, 1}).counts != a.counts);
}

TEST_CASE("monotone empirical mean") {
  double prev = 0;
  for (unsigned n : {2u, 5u, 10u, 20u}) {
    const double m = run_simulation({n, 100'000, 42, 2}).empirical_mean();
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("agreement with the exact law") {
  const auto two = run_simulation({2, 1'000'000, 42, 2});
  CHECK(std::abs(two.empirical_pmf[1] - 1.0 / 3) < 0.005);
  for (unsigned n : {2u, 3u, 5u}) {
    const auto r = run_simulation({n, 1'000'000, 42, 2});
    const auto c = compare_empirical(r, pmf_by_recurrence<Rational>(n));
    CHECK(c.max_abs_dev <= 0.005);
    CHECK(c.chi_square_ok);
  }
  const auto ten = run_simulation({10, 1'000'000, 42, 2});
  CHECK(std::abs(ten.empirical_mean() - to_double(mean_closed_form<Rational>(10))) < 0.01);
  CHECK(to_double(mean_closed_form<Rational>(10)) == doctest::Approx(2.28598).epsilon(1e-5));
  CHECK_THROWS(compare_empirical(ten, pmf_by_recurrence<Rational>(9)));
}
