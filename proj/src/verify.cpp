#include "cchain/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cchain {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `body`, which reports into `detail` and returns whether the check
// holds. A positive `limit` (seconds) is part of the check.
CheckResult timed(std::string name, double limit, const std::function<bool(std::ostringstream&)>& body) {
  CheckResult r;
  r.name = std::move(name);
  std::ostringstream detail;
  const auto start = Clock::now();
  try {
    r.passed = body(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit > 0 && r.seconds > limit) {
    r.passed = false;
    detail << "; runtime " << r.seconds << " s exceeds " << limit << " s";
  }
  r.detail = detail.str();
  return r;
}

unsigned pick(unsigned requested, unsigned fallback) { return requested ? requested : fallback; }

std::string fmt(const BigFloat& x, unsigned digits = 6) { return to_decimal_string(x, digits); }

BigFloat pi_value() {
  BigFloat p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

// z(c_1 + c_2 z + ...)/den as printed.
struct PrintedPgf {
  unsigned n;
  long long den;
  std::vector<long long> coeffs;
};

const std::vector<PrintedPgf>& printed_table() {
  static const std::vector<PrintedPgf> t = {
      {2, 3, {2, 1}},
      {3, 18, {9, 8, 1}},
      {4, 180, {72, 87, 20, 1}},
      {5, 2700, {900, 1332, 427, 40, 1}},
      {6, 56700, {16200, 27810, 11142, 1477, 70, 1}},
  };
  return t;
}

CheckResult printed_tables(const VerifyOptions&) {
  return timed("printed_tables", 1.0, [](std::ostringstream& d) {
    for (const auto& row : printed_table()) {
      const auto pmf = pmf_by_recurrence<Rational>(row.n);
      for (unsigned k = 1; k <= row.n; ++k) {
        if (pmf.at(k) != make_rational(row.coeffs[k - 1], row.den)) {
          d << "G_" << row.n << " coefficient of z^" << k << " is " << to_fraction_string(pmf.at(k));
          return false;
        }
      }
    }
    d << "G_2..G_6 match exactly";
    return true;
  });
}

CheckResult route_agreement(const VerifyOptions& o) {
  const unsigned ncomp = std::min(pick(o.nmax, 14), kCompositionCap);
  const unsigned nweights = std::max(100u, o.nmax);
  return timed("route_agreement", 60.0, [=](std::ostringstream& d) {
    const auto rec = pgf_table_by_recurrence<Rational>(nweights);
    const auto wts = pgf_table_by_weights(nweights);
    for (unsigned n = 1; n <= ncomp; ++n) {
      const auto comp = pmf_direct_compositions(n);
      if (comp.probs != to_pmf(rec[n]).probs) {
        d << "composition route differs at n = " << n;
        return false;
      }
    }
    for (unsigned n = 1; n <= nweights; ++n) {
      if (rec[n].coeffs != wts[n].coeffs) {
        d << "weighted route differs at n = " << n;
        return false;
      }
    }
    d << "recurrence = compositions for n <= " << ncomp << ", recurrence = weights for n <= " << nweights;
    return true;
  });
}

CheckResult root_census(const VerifyOptions& o) {
  const unsigned nmax = pick(o.nmax, 100);
  return timed("real_root_census", 300.0, [=](std::ostringstream& d) {
    for (unsigned n = 1; n <= nmax; ++n) {
      const auto set = isolate_roots(n);  // certifies or throws
      bool ok = set.enclosures.size() == n && set.enclosures[0].exact() && sign(set.enclosures[0].lo) == 0;
      for (std::size_t i = 0; ok && i < set.enclosures.size(); ++i) {
        ok = sign(set.enclosures[i].hi) <= 0 && (i == 0 || set.enclosures[i].hi < set.enclosures[i - 1].lo);
      }
      if (!ok) {
        d << "malformed enclosure set at n = " << n;
        return false;
      }
    }
    d << "n distinct certified roots in (-inf, 0] for every n <= " << nmax;
    return true;
  });
}

CheckResult closed_form_roots(const VerifyOptions&) {
  return timed("closed_form_roots", 0, [](std::ostringstream& d) {
    BigFloatScope scope(60);
    const auto r2 = isolate_roots(2);
    if (!(r2.enclosures[1].exact() && r2.enclosures[1].lo == -2)) {
      d << "n = 2: second root not exactly -2";
      return false;
    }
    const BigFloat s7 = sqrt(BigFloat(7));
    const auto r3 = refine_roots(isolate_roots(3), parse_rational("1e-32"));
    const BigFloat want3[] = {BigFloat(0), -4 + s7, -4 - s7};
    BigFloat err3(0);
    for (unsigned k = 0; k < 3; ++k) err3 = std::max(err3, BigFloat(abs(to_bigfloat(r3.enclosures[k].midpoint()) - want3[k])));

    // r_2 = (2 sqrt(139) cos D - 20)/3, r_3, r_4 with the signs as printed.
    const BigFloat s139 = sqrt(BigFloat(139)), s3 = sqrt(BigFloat(3));
    const BigFloat delta = (atan(27 * sqrt(BigFloat(1895)) / 1142) - pi_value()) / 3;
    const BigFloat want4[] = {BigFloat(0), (2 * s139 * cos(delta) - 20) / 3,
                              -(s139 * (s3 * sin(delta) + cos(delta)) + 20) / 3,
                              -(s139 * (-s3 * sin(delta) + cos(delta)) + 20) / 3};
    const auto r4 = refine_roots(isolate_roots(4), parse_rational("1e-22"));
    BigFloat err4(0);
    for (unsigned k = 0; k < 4; ++k) err4 = std::max(err4, BigFloat(abs(to_bigfloat(r4.enclosures[k].midpoint()) - want4[k])));
    d << "n = 2 exact; n = 3 max error " << fmt(err3, 3) << "; n = 4 max error " << fmt(err4, 3);
    return err3 <= BigFloat("1e-30") && err4 <= BigFloat("1e-20");
  });
}

CheckResult bernoulli_reconstruction(const VerifyOptions& o) {
  const unsigned nmax = pick(o.nmax, 50);
  return timed("bernoulli_reconstruction", 0, [=](std::ostringstream& d) {
    BigFloatScope scope(60);
    const Rational width = parse_rational("1e-40");
    BigFloat worst(0);
    for (unsigned n = 1; n <= nmax; ++n) {
      const auto f = bernoulli_factorization(n, width);
      const auto rebuilt = reconstruct_pmf<BigFloat>(f);
      const auto exact = pmf_by_recurrence<Rational>(n);
      for (unsigned k = 1; k <= n; ++k) worst = std::max(worst, BigFloat(abs(rebuilt.at(k) - to_bigfloat(exact.at(k)))));
    }
    const auto f2 = bernoulli_factorization(2, width);
    const bool q2_ok = f2.success_probs[1] == make_rational(1, 3) && sign(f2.error_radii[1]) == 0;
    const auto f3 = bernoulli_factorization(3, width);
    const BigFloat s7 = sqrt(BigFloat(7));
    const BigFloat slack("1e-50");
    const bool q3_ok = abs(to_bigfloat(f3.success_probs[1]) - 1 / (5 - s7)) <= to_bigfloat(f3.error_radii[1]) + slack &&
                       abs(to_bigfloat(f3.success_probs[2]) - 1 / (5 + s7)) <= to_bigfloat(f3.error_radii[2]) + slack;
    d << "max entry error " << fmt(worst, 3) << " for n <= " << nmax << "; q_2(2) = 1/3 " << (q2_ok ? "ok" : "FAILED")
      << "; q(3) = 1/(5 -+ sqrt 7) " << (q3_ok ? "ok" : "FAILED");
    return worst <= BigFloat("1e-20") && q2_ok && q3_ok;
  });
}

CheckResult pf_certificates(const VerifyOptions& o) {
  const unsigned nminor = pick(o.nmax, 30);
  const unsigned nlc = std::max(100u, o.nmax);
  return timed("pf_certificates", 0, [=](std::ostringstream& d) {
    std::size_t minors = 0, exact = 0;
    for (unsigned n = 1; n <= nminor; ++n) {
      const auto r = check_pf_minors(n, 4);
      minors += r.minors_checked;
      exact += r.exact_evaluations;
      if (!r.ok() || sign(r.min_minor_value) < 0) {
        d << "negative minor at n = " << n << ": " << to_decimal_string(r.min_minor_value, 6);
        return false;
      }
    }
    for (unsigned n = 3; n <= nlc; ++n) {
      if (!check_strong_log_concavity(n).ok()) {
        d << "strong log-concavity fails at n = " << n;
        return false;
      }
    }
    d << minors << " minors of order <= 4 nonnegative for n <= " << nminor << " (" << exact
      << " evaluated exactly); strong log-concavity for 3 <= n <= " << nlc;
    return true;
  });
}

CheckResult moment_identities(const VerifyOptions& o) {
  const unsigned nmax = pick(o.nmax, 100);
  return timed("moment_identities", 0, [=](std::ostringstream& d) {
    const auto table = harmonic_table<Rational>(nmax);
    for (unsigned n = 1; n <= nmax; ++n) {
      const auto pgf = cumulants_from_pgf<Rational>(n, 3);
      const auto& h = table[n];
      if (pgf.mean != mean_closed_form(h) || pgf.variance != variance_closed_form(h) ||
          pgf.L_cubed != third_cumulant_closed_form(h)) {
        d << "closed form and pgf route differ at n = " << n;
        return false;
      }
    }
    const auto& h1 = table[1];
    const bool degenerate = mean_closed_form(h1) == 1 && sign(variance_closed_form(h1)) == 0 &&
                            sign(third_cumulant_closed_form(h1)) == 0;
    d << "mean, variance, kappa_3 agree exactly for n <= " << nmax << "; n = 1 degenerate "
      << (degenerate ? "ok" : "FAILED");
    return degenerate;
  });
}

CheckResult cumulant_bound(const VerifyOptions& o) {
  const unsigned nmax = pick(o.nmax, 100);
  return timed("cumulant_bound", 0, [=](std::ostringstream& d) {
    double worst = 0;
    for (unsigned n = 2; n <= nmax; ++n) {
      for (const auto& e : cumulant_bound_report(n, 8)) {
        if (!e.ok) {
          d << "bound fails at n = " << n << ", k = " << e.k;
          return false;
        }
        worst = std::max(worst, e.lhs / to_double(e.rhs));
      }
    }
    d << "holds for 2 <= n <= " << nmax << ", 3 <= k <= 8; largest lhs/rhs " << worst;
    return true;
  });
}

CheckResult berry_esseen(const VerifyOptions&) {
  return timed("berry_esseen", 0, [](std::ostringstream& d) {
    bool ok = true;
    BigFloat prev(2);
    for (unsigned n : {10u, 100u, 1000u, 10000u}) {
      const BigFloat dist = kolmogorov_distance(n, Backend::float64());
      BigFloatScope scope(kDiagnosticDigits);
      const BigFloat bound = 72 / sqrt(log(BigFloat(n)));
      d << "n=" << n << ": " << fmt(dist) << " (bound " << fmt(bound, 4) << ") ";
      ok = ok && dist <= bound && dist < prev;
      prev = dist;
    }
    d << (ok ? "bounded and strictly decreasing" : "bound or trend violated");
    return ok;
  });
}

CheckResult mod_gaussian(const VerifyOptions& o) {
  const unsigned digits = std::max(o.digits, 60u);
  return timed("mod_gaussian", 0, [=](std::ostringstream& d) {
    const auto backend = Backend::bigfloat(digits);
    BigFloatScope scope(digits);
    BigFloat worst(0);
    for (unsigned n = 2; n <= 100; ++n) worst = std::max(worst, BigFloat(abs(kappa4_of_Yn(n, backend).kappa3 - 1)));
    const bool k3_ok = worst <= BigFloat("1e-20");
    d << "max |kappa_3(Y_n) - 1| = " << fmt(worst, 3) << "; |kappa_4(Y_n)|:";
    bool k4_ok = true;
    BigFloat prev(-1);
    for (unsigned n : {1000u, 10000u, 100000u}) {
      const BigFloat k4 = abs(kappa4_of_Yn(n, backend).kappa4);
      d << " " << fmt(k4);
      if (prev >= 0 && !(k4 < prev)) k4_ok = false;
      prev = k4;
    }
    d << (k4_ok ? " (decreasing)" : " (NOT decreasing)") << "; |log_ratio(1) - 1/6|:";
    bool lr_ok = true;
    prev = -1;
    for (unsigned n : {100u, 1000u, 10000u}) {
      const auto prof = mod_gaussian_profile(n, {1.0}, Backend::float64());
      const BigFloat gap = abs(prof.log_ratio[0] - prof.psi_target[0]);
      d << " " << fmt(gap);
      if (prev >= 0 && gap > prev) lr_ok = false;
      prev = gap;
    }
    d << (lr_ok ? " (nonincreasing)" : " (NOT nonincreasing)");
    return k3_ok && k4_ok && lr_ok;
  });
}

CheckResult asymptotic_constants(const VerifyOptions& o) {
  return timed("asymptotic_constants", 5.0, [=](std::ostringstream& d) {
    BigFloatScope scope(o.digits);
    const auto r = asymptotic_ratios(1'000'000);
    d << "n = 10^6: var ratio " << fmt(r.var_ratio) << ", mean ratio " << fmt(r.mean_ratio) << ", kappa_3 ratio "
      << fmt(r.kappa3_ratio);
    return r.var_ratio >= BigFloat("0.8") && r.var_ratio <= BigFloat("1.2") && r.mean_ratio >= BigFloat("0.95") &&
           r.mean_ratio <= BigFloat("1.1");
  });
}

CheckResult monte_carlo(const VerifyOptions& o) {
  return timed("monte_carlo", 120.0, [=](std::ostringstream& d) {
    bool ok = true;
    for (unsigned n : {2u, 3u, 5u}) {
      const auto one = run_simulation({n, o.trials, o.seed, 1});
      const auto many = run_simulation({n, o.trials, o.seed, std::max(2u, o.workers)});
      const auto cmp = compare_empirical(one, pmf_by_recurrence<Rational>(n));
      const bool same = one.counts == many.counts;
      d << "n=" << n << ": dev " << cmp.max_abs_dev << ", chi2 " << cmp.chi_square << " < " << cmp.chi_square_quantile
        << (same ? "" : ", histograms differ across worker counts") << "; ";
      ok = ok && cmp.max_abs_dev <= 0.005 && cmp.chi_square_ok && same;
    }
    d << "seed " << o.seed << ", " << o.trials << " trials";
    return ok;
  });
}

}  // namespace

bool SuiteReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> list = {
      {1, "printed_tables", "routes", printed_tables},
      {2, "route_agreement", "routes", route_agreement},
      {3, "real_root_census", "roots", root_census},
      {4, "closed_form_roots", "roots", closed_form_roots},
      {5, "bernoulli_reconstruction", "factorization", bernoulli_reconstruction},
      {6, "pf_certificates", "pf", pf_certificates},
      {7, "moment_identities", "moments", moment_identities},
      {8, "cumulant_bound", "bound", cumulant_bound},
      {9, "berry_esseen", "diagnostics", berry_esseen},
      {10, "mod_gaussian", "diagnostics", mod_gaussian},
      {11, "asymptotic_constants", "moments", asymptotic_constants},
      {12, "monte_carlo", "montecarlo", monte_carlo},
  };
  return list;
}

std::vector<std::string> suite_names() {
  return {"routes", "roots", "factorization", "pf", "moments", "bound", "diagnostics", "montecarlo", "all"};
}

CheckResult check_interlacing(unsigned nmax) {
  return timed("root_interlacing", 0, [=](std::ostringstream& d) {
    for (unsigned n = 3; n <= nmax; ++n) {
      if (!roots_interlace(n)) {
        d << "roots of G_" << n - 1 << " do not interlace those of G_" << n;
        return false;
      }
    }
    d << "strict interlacing for 3 <= n <= " << nmax;
    return true;
  });
}

SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  }
  SuiteReport report;
  report.suite = std::string(suite);
  for (const auto& c : acceptance_criteria()) {
    if (suite == "all" || c.suite == suite) report.checks.push_back(c.run(opts));
  }
  if (suite == "roots") report.checks.push_back(check_interlacing(pick(opts.nmax, 60)));
  return report;
}

Json suite_json(const SuiteReport& report, bool timings) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
    if (timings) j["seconds"] = c.seconds;
    checks.push_back(std::move(j));
  }
  return {{"suite", report.suite}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

}  // namespace cchain
