// cchain: command-line front end for the vertex-number library.
//
// Every run prints {"manifest": ..., "result": ...} (JSON, default) or a CSV
// table preceded by one "# manifest ..." comment line. Exit codes: 0 success,
// 1 failed check or certification, 2 usage error.

#include "cchain/diagnostics.hpp"
#include "cchain/exact_core.hpp"
#include "cchain/moments.hpp"
#include "cchain/montecarlo.hpp"
#include "cchain/serialize.hpp"
#include "cchain/spectral.hpp"
#include "cchain/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unistd.h>

using namespace cchain;

namespace {

struct Common {
  std::string format = "json";
  std::string output;
  std::string backend = "exact";
  unsigned digits = kDefaultDigits;
  unsigned precision = 20;  // significant digits of printed decimals
};

struct Output {
  Json json;
  Table table;
  bool ok = true;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_atomically(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << bytes;
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write to " + tmp + " failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

void emit(const Common& c, RunManifest manifest, const Output& out) {
  manifest.parameters["backend"] = c.backend;
  manifest.parameters["digits"] = c.digits;
  manifest.parameters["precision"] = c.precision;
  manifest.parameters["format"] = c.format;
  std::string bytes;
  if (c.format == "csv") {
    const std::string body = to_csv(out.table);
    manifest.checksum = hex64(fnv1a64(body));
    bytes = "# manifest " + manifest_json(manifest).dump() + "\n" + body;
  } else {
    const std::string body = out.json.dump(2);
    manifest.checksum = hex64(fnv1a64(body));
    Json doc = {{"manifest", manifest_json(manifest)}, {"result", out.json}};
    bytes = doc.dump(2) + "\n";
  }
  if (c.output.empty()) {
    std::cout << bytes;
  } else {
    write_atomically(c.output, bytes);
  }
}

Backend backend_of(const Common& c) {
  try {
    return Backend::parse(c.backend, c.digits);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Calls f.template operator()<T>() for the scalar type of the backend, with
// the BigFloat precision installed.
template <class F>
Output dispatch(const Backend& b, F&& f) {
  switch (b.kind) {
    case BackendKind::exact: return f.template operator()<Rational>();
    case BackendKind::float64: return f.template operator()<double>();
    case BackendKind::bigfloat: break;
  }
  BigFloatScope scope(b.digits);
  return f.template operator()<BigFloat>();
}

std::string str(const BigFloat& x, unsigned precision) { return decimal(x, precision); }

Window parse_window(const std::string& text) {
  Window w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("window intervals are written lo:hi, got '" + part + "'");
    w.emplace_back(parse_rational(part.substr(0, colon)), parse_rational(part.substr(colon + 1)));
  }
  return w;
}

Json window_json(const Window& w) {
  Json j = Json::array();
  for (const auto& [lo, hi] : w) j.push_back({to_fraction_string(lo), to_fraction_string(hi)});
  return j;
}

Output diagnose(const std::string& kind, const std::vector<unsigned>& grid, const Backend& backend,
                const std::vector<double>& z, double x, double delta, const Window& window, unsigned precision) {
  Output out;
  out.json = Json::array();
  const auto p = precision;
  if (kind == "lattice") {
    out.table.header = {"n", "k", "t", "mass"};
    for (unsigned n : grid) {
      const auto lat = normalized_lattice(n, backend);
      Json pts = Json::array();
      for (unsigned k = 1; k <= n; ++k) {
        const auto& pt = lat.points[k - 1];
        pts.push_back({{"k", k}, {"t", str(pt.t, p)}, {"mass", str(pt.mass, p)}});
        out.table.rows.push_back({std::to_string(n), std::to_string(k), str(pt.t, p), str(pt.mass, p)});
      }
      out.json.push_back({{"n", n}, {"mean", str(lat.mean, p)}, {"sigma", str(lat.sigma, p)}, {"points", pts}});
    }
  } else if (kind == "kolmogorov") {
    out.table.header = {"n", "distance", "bound_72"};
    for (unsigned n : grid) {
      const BigFloat dist = kolmogorov_distance(n, backend);
      BigFloatScope scope(kDiagnosticDigits);
      const BigFloat bound = 72 / sqrt(log(BigFloat(n)));
      out.json.push_back({{"n", n}, {"distance", str(dist, p)}, {"bound_72", str(bound, p)}});
      out.table.rows.push_back({std::to_string(n), str(dist, p), str(bound, p)});
    }
  } else if (kind == "modgauss") {
    out.table.header = {"n", "z", "log_ratio", "psi_target", "w_n", "L"};
    for (unsigned n : grid) {
      const auto prof = mod_gaussian_profile(n, z, backend);
      Json rows = Json::array();
      for (std::size_t i = 0; i < z.size(); ++i) {
        rows.push_back({{"z", decimal(z[i])},
                        {"log_ratio", str(prof.log_ratio[i], p)},
                        {"psi_target", str(prof.psi_target[i], p)}});
        out.table.rows.push_back({std::to_string(n), decimal(z[i]), str(prof.log_ratio[i], p),
                                  str(prof.psi_target[i], p), str(prof.w_n, p), str(prof.L, p)});
      }
      out.json.push_back({{"n", n}, {"L", str(prof.L, p)}, {"w_n", str(prof.w_n, p)}, {"profile", rows}});
    }
  } else if (kind == "kappa4") {
    out.table.header = {"n", "kappa3_Yn", "kappa4_Yn"};
    for (unsigned n : grid) {
      const auto y = kappa4_of_Yn(n, backend);
      out.json.push_back({{"n", n}, {"kappa3_Yn", str(y.kappa3, p)}, {"kappa4_Yn", str(y.kappa4, p)}});
      out.table.rows.push_back({std::to_string(n), str(y.kappa3, p), str(y.kappa4, p)});
    }
  } else if (kind == "moderate") {
    out.table.header = {"n", "x", "t_n", "threshold", "lhs_upper", "rhs_upper", "lhs_lower", "rhs_lower"};
    for (unsigned n : grid) {
      const auto md = moderate_deviation_profile(n, x, backend);
      auto opt = [&](const std::optional<BigFloat>& v) { return v ? Json(str(*v, p)) : Json(nullptr); };
      out.json.push_back({{"n", n},
                          {"x", decimal(x)},
                          {"t_n", str(md.t_n, p)},
                          {"threshold", str(md.threshold, p)},
                          {"lhs_upper", str(md.lhs_upper, p)},
                          {"rhs_upper", str(md.rhs_upper, p)},
                          {"lhs_lower", str(md.lhs_lower, p)},
                          {"rhs_lower", str(md.rhs_lower, p)},
                          {"log_lhs_upper", opt(md.log_lhs_upper())},
                          {"log_lhs_lower", opt(md.log_lhs_lower())},
                          {"ratio_upper", opt(md.ratio_upper())},
                          {"ratio_lower", opt(md.ratio_lower())},
                          {"upper_beyond_support", md.upper_beyond_support},
                          {"lower_beyond_support", md.lower_beyond_support}});
      out.table.rows.push_back({std::to_string(n), decimal(x), str(md.t_n, p), str(md.threshold, p),
                                str(md.lhs_upper, p), str(md.rhs_upper, p), str(md.lhs_lower, p),
                                str(md.rhs_lower, p)});
    }
  } else if (kind == "local") {
    out.table.header = {"n", "delta", "x", "scaled_prob", "target_density_mass"};
    for (unsigned n : grid) {
      const auto ll = local_limit_profile(n, delta, x, window, backend);
      out.json.push_back({{"n", n},
                          {"delta", decimal(delta)},
                          {"x", decimal(x)},
                          {"window", window_json(window)},
                          {"scaled_prob", str(ll.scaled_prob, p)},
                          {"target_density_mass", str(ll.target_density_mass, p)}});
      out.table.rows.push_back({std::to_string(n), decimal(delta), decimal(x), str(ll.scaled_prob, p),
                                str(ll.target_density_mass, p)});
    }
  } else if (kind == "asymptotic") {
    out.table.header = {"n", "mean_ratio", "var_ratio", "kappa3_ratio"};
    BigFloatScope scope(std::max(backend.digits, kDiagnosticDigits));
    for (unsigned n : grid) {
      const auto r = asymptotic_ratios(n);
      out.json.push_back({{"n", n},
                          {"mean_ratio", str(r.mean_ratio, p)},
                          {"var_ratio", str(r.var_ratio, p)},
                          {"kappa3_ratio", str(r.kappa3_ratio, p)}});
      out.table.rows.push_back({std::to_string(n), str(r.mean_ratio, p), str(r.var_ratio, p), str(r.kappa3_ratio, p)});
    }
  } else {
    throw UsageError("unknown diagnostic '" + kind + "'");
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact distribution, roots, moments and simulation of the vertex number of random convex chains"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CCHAIN_VERSION));
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  Common c;
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", c.output, "write to this file (atomically) instead of stdout");
  auto* backend_opt = app.add_option("--backend", c.backend, "exact, float64 or bigfloat (diagnose defaults to float64)");
  app.add_option("--digits", c.digits, "bigfloat precision in decimal digits")
      ->envname("CCHAIN_DIGITS")
      ->check(CLI::Range(kMinDigits, 100000u));
  app.add_option("--precision", c.precision, "significant digits of printed decimals")->check(CLI::Range(1u, 1000u));

  std::function<Output()> action;
  RunManifest manifest;

  unsigned n = 1;
  auto add_n = [&](CLI::App* sub) { sub->add_option("n", n, "number of sample points")->required(); };

  auto* pmf = app.add_subcommand("pmf", "law of f_0(T_n)");
  add_n(pmf);
  std::string route = "recurrence";
  pmf->add_option("--route", route, "recurrence, compositions or weights")
      ->check(CLI::IsMember({"recurrence", "compositions", "weights"}));
  pmf->callback([&] {
    manifest.parameters = {{"n", n}, {"route", route}};
    action = [&] {
      const Backend b = backend_of(c);
      if (route != "recurrence") {
        if (b.kind != BackendKind::exact) throw UsageError("the " + route + " route is exact only");
        const auto p = route == "compositions" ? pmf_direct_compositions(n) : pmf_by_weights(n);
        return Output{pmf_json(p, c.precision), pmf_table(p, c.precision)};
      }
      return dispatch(b, [&]<class T>() {
        const auto p = pmf_by_recurrence<T>(n);
        return Output{pmf_json(p, c.precision), pmf_table(p, c.precision)};
      });
    };
  });

  std::string width = "1e-40";
  auto* roots = app.add_subcommand("roots", "certified root enclosures of G_n");
  add_n(roots);
  roots->add_option("--width", width, "target enclosure width, a rational such as 1e-40 or 1/1000");
  roots->callback([&] {
    manifest.parameters = {{"n", n}, {"width", width}};
    action = [&] {
      const auto set = refine_roots(isolate_roots(n), parse_rational(width));
      return Output{roots_json(set, c.precision), roots_table(set, c.precision)};
    };
  });

  auto* factorize = app.add_subcommand("factorize", "Bernoulli success probabilities 1/(1 - r_k)");
  add_n(factorize);
  factorize->add_option("--width", width, "target root enclosure width");
  factorize->callback([&] {
    manifest.parameters = {{"n", n}, {"width", width}};
    action = [&] {
      const auto f = bernoulli_factorization(n, parse_rational(width));
      return Output{factorization_json(f, c.precision), factorization_table(f, c.precision)};
    };
  });

  unsigned kmax = 4;
  std::string source = "pgf";
  auto* moments = app.add_subcommand("moments", "mean, variance and cumulants");
  add_n(moments);
  moments->add_option("--kmax", kmax, "highest cumulant order")->check(CLI::Range(1u, kMaxMomentOrder));
  moments->add_option("--source", source, "pgf or closed_form")->check(CLI::IsMember({"pgf", "closed_form"}));
  moments->callback([&] {
    manifest.parameters = {{"n", n}, {"kmax", kmax}, {"source", source}};
    action = [&] {
      Output out = dispatch(backend_of(c), [&]<class T>() {
        const auto r = source == "pgf" ? cumulants_from_pgf<T>(n, kmax) : cumulants_closed_form<T>(n);
        return Output{cumulants_json(r, c.precision), cumulants_table(r, c.precision)};
      });
      if (n >= 2 && kmax >= 3 && source == "pgf") out.json["bound"] = bound_json(cumulant_bound_report(n, kmax));
      return out;
    };
  });

  unsigned order = 4;
  auto* pf = app.add_subcommand("pf", "Toeplitz minors and strong log-concavity");
  add_n(pf);
  pf->add_option("--order", order, "largest minor order")->check(CLI::Range(1u, kMaxPfOrder));
  pf->callback([&] {
    manifest.parameters = {{"n", n}, {"order", order}};
    action = [&] {
      Output out;
      const auto minors = check_pf_minors(n, order);
      out.json = {{"minors", pf_json(minors)}};
      out.ok = minors.ok();
      if (n >= 3) {
        const auto lc = check_strong_log_concavity(n);
        out.json["log_concavity"] = pf_json(lc);
        out.ok = out.ok && lc.ok();
      }
      out.table = {{"check", "ok", "min_value"},
                   {{"minors", minors.ok() ? "true" : "false", to_decimal_string(minors.min_minor_value, 12)}}};
      return out;
    };
  });

  std::string kind;
  std::vector<unsigned> grid{100, 1000, 10000};
  std::vector<double> zs{-1, -0.5, 0, 0.5, 1};
  double x = 0.5, delta = kDefaultDelta;
  std::string window_text = "-1:1";
  auto* diag = app.add_subcommand("diagnose", "limit-theorem diagnostics over an n-grid");
  diag->add_option("kind", kind, "lattice, kolmogorov, modgauss, kappa4, moderate, local or asymptotic")->required();
  diag->add_option("--n", grid, "comma-separated n values")->delimiter(',');
  diag->add_option("--z", zs, "comma-separated z values in [-2, 2] (write --z=-1,0,1)")->delimiter(',');
  diag->add_option("--x", x, "tail point (moderate) or centre (local)");
  diag->add_option("--delta", delta, "window exponent in (0, 1/2)");
  diag->add_option("--window", window_text, "comma-separated lo:hi intervals");
  diag->callback([&] {
    // Exact pmfs at n = 10^4 cost minutes; downstream work is high precision anyway.
    if (backend_opt->count() == 0) c.backend = "float64";
    manifest.parameters = {{"kind", kind}, {"n", grid}, {"z", zs}, {"x", x}, {"delta", delta}, {"window", window_text}};
    action = [&] {
      const Backend b = backend_of(c);
      return diagnose(kind, grid, b, zs, x, delta, parse_window(window_text), c.precision);
    };
  });

  std::uint64_t trials = 1'000'000, seed = 42;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool compare = false;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo vertex counts");
  add_n(sim);
  sim->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "64-bit seed");
  sim->add_option("--workers", workers, "threads (results do not depend on it)")->check(CLI::PositiveNumber);
  sim->add_flag("--compare", compare, "compare with the exact law");
  sim->callback([&] {
    // Worker count is left out: it cannot change the output.
    manifest.parameters = {{"n", n}, {"trials", trials}, {"seed", seed}, {"compare", compare}};
    action = [&] {
      auto r = run_simulation({n, trials, seed, workers});
      Output out;
      if (compare) {
        const auto cmp = compare_empirical(r, pmf_by_recurrence<Rational>(n));
        r.max_abs_dev = cmp.max_abs_dev;
        out.json = simulation_json(r);
        out.json["comparison"] = comparison_json(cmp);
      } else {
        out.json = simulation_json(r);
      }
      out.table = simulation_table(r);
      return out;
    };
  });

  std::string suite;
  VerifyOptions vopts;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff every check passes");
  verify->add_option("suite", suite, "routes, roots, factorization, pf, moments, bound, diagnostics, montecarlo, all")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--nmax", vopts.nmax, "upper n of the suite's sweep");
  verify->add_option("--seed", vopts.seed, "Monte Carlo seed");
  verify->add_option("--trials", vopts.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  verify->add_option("--workers", vopts.workers, "Monte Carlo threads")->check(CLI::PositiveNumber);
  verify->add_flag("--timings", timings, "include per-check seconds");
  verify->callback([&] {
    manifest.parameters = {{"suite", suite}, {"nmax", vopts.nmax}, {"seed", vopts.seed}, {"trials", vopts.trials}};
    action = [&] {
      vopts.digits = c.digits;
      const auto report = run_suite(suite, vopts);
      Output out;
      out.json = suite_json(report, timings);
      out.table.header = {"check", "passed", "detail"};
      for (const auto& chk : report.checks) out.table.rows.push_back({chk.name, chk.passed ? "true" : "false", chk.detail});
      out.ok = report.passed();
      for (const auto& chk : report.checks) {
        std::cerr << (chk.passed ? "PASS " : "FAIL ") << chk.name << " (" << chk.seconds << " s): " << chk.detail << "\n";
      }
      return out;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) manifest.subcommand = sub->get_name();
  try {
    const Output out = action();
    emit(c, manifest, out);
    return out.ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "cchain: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cchain: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cchain: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
