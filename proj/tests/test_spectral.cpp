#include "cchain/moments.hpp"
#include "cchain/spectral.hpp"
#include "cchain/sturm.hpp"

#include <doctest.h>

using namespace cchain;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

bool contains(const RootEnclosure& e, const BigFloat& x) { return to_bigfloat(e.lo) <= x && x <= to_bigfloat(e.hi); }

void check_disjoint_and_nonpositive(const RootEnclosureSet& set) {
  REQUIRE(set.enclosures.size() == set.n);
  CHECK(set.enclosures.front().exact());
  CHECK(set.enclosures.front().lo == 0);
  for (std::size_t i = 1; i < set.enclosures.size(); ++i) {
    CHECK(set.enclosures[i].hi < set.enclosures[i - 1].lo);
    CHECK(set.enclosures[i].hi < 0);
  }
}

}  // namespace

TEST_CASE("Sturm counts on small pgfs") {
  CHECK(sturm_count(pgf_by_recurrence<Rational>(2), q(-3), q(1)) == 2);
  CHECK(sturm_count(pgf_by_recurrence<Rational>(1), q(-1), q(1)) == 1);
  const auto h50 = monic_poly(50);
  CHECK(sturm_count(h50, -cauchy_bound(h50.coeffs), q(0)) == 50);
}

TEST_CASE("small root sets") {
  const auto one = isolate_roots(1);
  REQUIRE(one.enclosures.size() == 1);
  CHECK(one.enclosures[0].exact());

  const auto two = refine_roots(isolate_roots(2), pow2(-130));
  REQUIRE(two.enclosures.size() == 2);
  CHECK(two.enclosures[0].lo == 0);
  CHECK(two.enclosures[1].exact());
  CHECK(two.enclosures[1].lo == -2);

  BigFloatScope scope(60);
  const auto three = refine_roots(isolate_roots(3), parse_rational("1e-40"));
  const BigFloat s7 = sqrt(BigFloat(7));
  CHECK(contains(three.enclosures[1], -4 + s7));
  CHECK(contains(three.enclosures[2], -4 - s7));
  for (const auto& e : three.enclosures) CHECK(e.width() <= parse_rational("1e-40"));
}

TEST_CASE("n = 4 trigonometric roots") {
  BigFloatScope scope(60);
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  const BigFloat delta = (atan(27 * sqrt(BigFloat(1895)) / 1142) - pi) / 3;
  const BigFloat s = sqrt(BigFloat(139));
  const BigFloat c = cos(delta), sn = sin(delta);
  // r2 carries a factor 2 on the cosine term; r3, r4 as usually printed.
  const BigFloat r2 = (2 * s * c - 20) / 3;
  const BigFloat r3 = -(s * c + 20) / 3 - sqrt(BigFloat(139) / 3) * sn;
  const BigFloat r4 = -(s * c + 20) / 3 + sqrt(BigFloat(139) / 3) * sn;
  const auto set = refine_roots(isolate_roots(4), parse_rational("1e-30"));
  // Monic cubic z^3 + 20 z^2 + 87 z + 72 vanishes at each.
  for (const BigFloat& r : {r2, r3, r4}) CHECK(abs(((r + 20) * r + 87) * r + 72) < BigFloat("1e-50"));
  std::vector<BigFloat> roots{r2, r3, r4};
  std::sort(roots.begin(), roots.end(), std::greater<>());
  for (int i = 0; i < 3; ++i) CHECK(contains(set.enclosures[i + 1], roots[i]));
  CHECK(abs(r2 - BigFloat("-1.0822912856")) < BigFloat("1e-9"));
}

TEST_CASE("census and refinement") {
  for (unsigned n : {5u, 10u, 25u, 40u}) check_disjoint_and_nonpositive(isolate_roots(n));
  const auto ten = refine_roots(isolate_roots(10), parse_rational("1e-40"));
  check_disjoint_and_nonpositive(ten);
  for (const auto& e : ten.enclosures) CHECK(e.width() <= parse_rational("1e-40"));
  CHECK_NOTHROW(certify_enclosures(ten));
  CHECK_THROWS_AS(refine_roots(ten, q(0)), std::invalid_argument);
}

TEST_CASE("certification rejects a bad enclosure set") {
  auto set = isolate_roots(5);
  set.enclosures[2] = set.enclosures[3];
  CHECK_THROWS_AS(certify_enclosures(set), CertificationError);
}

TEST_CASE("interlacing") {
  for (unsigned n = 3; n <= 20; ++n) CHECK(roots_interlace(n));
}

TEST_CASE("Bernoulli factorization") {
  CHECK(bernoulli_factorization(1, q(1, 1000)).success_probs == std::vector<Rational>{1});
  const auto two = bernoulli_factorization(2, parse_rational("1e-40"));
  CHECK(two.success_probs == std::vector<Rational>{1, q(1, 3)});

  BigFloatScope scope(60);
  const auto three = bernoulli_factorization(3, parse_rational("1e-40"));
  const BigFloat s7 = sqrt(BigFloat(7));
  CHECK(abs(to_bigfloat(three.success_probs[1]) - 1 / (5 - s7)) <= to_bigfloat(three.error_radii[1]));
  CHECK(abs(to_bigfloat(three.success_probs[2]) - 1 / (5 + s7)) <= to_bigfloat(three.error_radii[2]));
  CHECK(to_double(three.success_probs[1]) == doctest::Approx(0.424764).epsilon(1e-6));
  CHECK(to_double(three.success_probs[2]) == doctest::Approx(0.130792).epsilon(1e-6));
}

TEST_CASE("reconstruction and mean identity") {
  BigFloatScope scope(60);
  for (unsigned n : {2u, 3u, 17u, 50u}) {
    const auto f = bernoulli_factorization(n, parse_rational("1e-40"));
    const auto exact = pmf_by_recurrence<Rational>(n);
    const auto rebuilt = reconstruct_pmf<BigFloat>(f);
    for (unsigned k = 1; k <= n; ++k) CHECK(abs(rebuilt.at(k) - to_bigfloat(exact.at(k))) < BigFloat("1e-20"));
    Rational sum = 0, radius = 0;
    for (std::size_t i = 0; i < f.success_probs.size(); ++i) {
      sum += f.success_probs[i];
      radius += f.error_radii[i];
    }
    CHECK(abs(sum - mean_closed_form<Rational>(n)) <= radius);
  }
  const auto f3 = bernoulli_factorization(3, parse_rational("1e-40"));
  const auto d = reconstruct_pmf<double>(f3);
  CHECK(d.at(1) == doctest::Approx(0.5));
  CHECK(d.at(2) == doctest::Approx(4.0 / 9));
  CHECK(d.at(3) == doctest::Approx(1.0 / 18));
}
