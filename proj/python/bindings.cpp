#include "cchain/diagnostics.hpp"
#include "cchain/exact_core.hpp"
#include "cchain/moments.hpp"
#include "cchain/montecarlo.hpp"
#include "cchain/spectral.hpp"
#include "cchain/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cchain;

namespace {

py::object to_py(const Integer& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(z.str().c_str(), nullptr, 10));
}

py::object to_py(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(numerator(q)), to_py(denominator(q)));
}

Rational from_py(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  const auto num = py::str(h.attr("numerator")).cast<std::string>();
  const auto den = py::str(h.attr("denominator")).cast<std::string>();
  return Rational(Integer(num), Integer(den));
}

// Exact values as Fractions, float64 as floats, bigfloat as decimal strings
// so that no digits are lost.
py::object to_py(double x) { return py::float_(x); }
py::object to_py(const BigFloat& x) { return py::str(to_decimal_string(x, current_bigfloat_digits())); }

template <class T>
py::list to_list(const std::vector<T>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

template <class F>
py::object dispatch(const std::string& backend, unsigned digits, F&& f) {
  const Backend b = Backend::parse(backend, digits);
  switch (b.kind) {
    case BackendKind::exact: return f.template operator()<Rational>();
    case BackendKind::float64: return f.template operator()<double>();
    case BackendKind::bigfloat: break;
  }
  BigFloatScope scope(b.digits);
  return f.template operator()<BigFloat>();
}

py::dict pf_dict(const PfReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["max_minor_order_checked"] = r.max_minor_order_checked;
  d["min_value"] = to_py(r.min_minor_value);
  d["min_rows"] = r.min_rows;
  d["min_cols"] = r.min_cols;
  d["minors_checked"] = r.minors_checked;
  d["exact_evaluations"] = r.exact_evaluations;
  d["log_concavity_ok"] = r.log_concavity_ok;
  d["ok"] = r.ok();
  return d;
}

double f64(const BigFloat& x) { return to_double(x); }

}  // namespace

PYBIND11_MODULE(_convexchain, m) {
  m.doc() = "Exact law, roots, moments and simulation of the vertex number of random convex chains";
  m.attr("__version__") = CCHAIN_VERSION;

  py::register_exception<CertificationError>(m, "CertificationError", PyExc_ArithmeticError);

  m.def(
      "pmf",
      [](unsigned n, const std::string& backend, unsigned digits) {
        return dispatch(backend, digits, [&]<class T>() { return py::object(to_list(pmf_by_recurrence<T>(n).probs)); });
      },
      py::arg("n"), py::arg("backend") = "exact", py::arg("digits") = kDefaultDigits,
      "P(f_0(T_n) = k) for k = 1..n from the three-term recurrence.");
  m.def(
      "pmf_compositions", [](unsigned n) { return to_list(pmf_direct_compositions(n).probs); }, py::arg("n"),
      "Brute-force composition formula (n <= 24).");
  m.def(
      "pmf_weights", [](unsigned n) { return to_list(pmf_by_weights(n).probs); }, py::arg("n"),
      "The weighted representation route.");
  m.def(
      "weight", [](unsigned k, unsigned n) { return to_py(weight(k, n)); }, py::arg("k"), py::arg("n"));
  m.def(
      "monic_poly", [](unsigned n) { return to_list(monic_poly(n).coeffs); }, py::arg("n"),
      "Integer coefficients of H_n, ascending powers.");
  m.def(
      "pgf_eval",
      [](unsigned n, py::object z, const std::string& backend, unsigned digits) {
        return dispatch(backend, digits, [&]<class T>() {
          if constexpr (is_exact_v<T>) {
            return to_py(pgf_eval<Rational>(n, from_py(z)));
          } else {
            return to_py(pgf_eval<T>(n, T(z.cast<double>())));
          }
        });
      },
      py::arg("n"), py::arg("z"), py::arg("backend") = "float64", py::arg("digits") = kDefaultDigits);
  m.def(
      "factorial_moments",
      [](unsigned n, unsigned kmax, const std::string& backend, unsigned digits) {
        return dispatch(backend, digits, [&]<class T>() { return py::object(to_list(factorial_moments<T>(n, kmax))); });
      },
      py::arg("n"), py::arg("kmax"), py::arg("backend") = "exact", py::arg("digits") = kDefaultDigits);

  m.def(
      "isolate_roots",
      [](unsigned n, py::object width) {
        RootEnclosureSet set;
        {
          py::gil_scoped_release release;
          set = isolate_roots(n);
        }
        if (!width.is_none()) set = refine_roots(set, from_py(width));
        py::list out;
        for (const auto& e : set.enclosures) out.append(py::make_tuple(to_py(e.lo), to_py(e.hi)));
        return out;
      },
      py::arg("n"), py::arg("width") = py::none(),
      "Certified enclosures (lo, hi) of the roots of G_n, optionally refined to the given width.");
  m.def(
      "roots_interlace", [](unsigned n) { return roots_interlace(n); }, py::arg("n"));
  m.def(
      "bernoulli_factorization",
      [](unsigned n, py::object width) {
        const auto f = bernoulli_factorization(n, from_py(width));
        py::list out;
        for (std::size_t i = 0; i < f.success_probs.size(); ++i) {
          out.append(py::make_tuple(to_py(f.success_probs[i]), to_py(f.error_radii[i])));
        }
        return out;
      },
      py::arg("n"), py::arg("width") = "1e-40", "(q_k, radius) pairs with q_k = 1/(1 - r_k).");
  m.def(
      "check_pf_minors",
      [](unsigned n, unsigned order) {
        PfReport r;
        {
          py::gil_scoped_release release;
          r = check_pf_minors(n, order);
        }
        return pf_dict(r);
      },
      py::arg("n"), py::arg("max_order") = 4);
  m.def(
      "check_strong_log_concavity", [](unsigned n) { return pf_dict(check_strong_log_concavity(n)); }, py::arg("n"));

  m.def(
      "cumulants",
      [](unsigned n, unsigned kmax, const std::string& source, const std::string& backend, unsigned digits) {
        return dispatch(backend, digits, [&]<class T>() {
          const auto r = source == "closed_form" ? cumulants_closed_form<T>(n) : cumulants_from_pgf<T>(n, kmax);
          py::dict d;
          d["n"] = r.n;
          d["mean"] = to_py(r.mean);
          d["variance"] = to_py(r.variance);
          d["L_cubed"] = to_py(r.L_cubed);
          d["cumulants"] = to_list(r.cumulants);
          d["source"] = to_string(r.source);
          return py::object(d);
        });
      },
      py::arg("n"), py::arg("kmax") = 4, py::arg("source") = "pgf", py::arg("backend") = "exact",
      py::arg("digits") = kDefaultDigits, "Cumulants kappa_1..kappa_max(kmax, 3).");
  m.def(
      "cumulant_bound_report",
      [](unsigned n, unsigned kmax) {
        py::list out;
        for (const auto& e : cumulant_bound_report(n, kmax)) {
          py::dict d;
          d["k"] = e.k;
          d["lhs"] = e.lhs;
          d["rhs"] = to_py(e.rhs);
          d["ok"] = e.ok;
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("kmax") = 8);
  m.def(
      "asymptotic_ratios",
      [](unsigned n) {
        BigFloatScope scope(kDefaultDigits);
        const auto r = asymptotic_ratios(n);
        py::dict d;
        d["mean_ratio"] = f64(r.mean_ratio);
        d["var_ratio"] = f64(r.var_ratio);
        d["kappa3_ratio"] = f64(r.kappa3_ratio);
        return d;
      },
      py::arg("n"));

  m.def(
      "kolmogorov_distance",
      [](unsigned n, const std::string& backend, unsigned digits) {
        return f64(kolmogorov_distance(n, Backend::parse(backend, digits)));
      },
      py::arg("n"), py::arg("backend") = "float64", py::arg("digits") = kDefaultDigits);
  m.def(
      "mod_gaussian_profile",
      [](unsigned n, const std::vector<double>& z, const std::string& backend) {
        const auto p = mod_gaussian_profile(n, z, Backend::parse(backend));
        py::dict d;
        d["L"] = f64(p.L);
        d["w_n"] = f64(p.w_n);
        std::vector<double> lr, psi;
        for (std::size_t i = 0; i < z.size(); ++i) {
          lr.push_back(f64(p.log_ratio[i]));
          psi.push_back(f64(p.psi_target[i]));
        }
        d["z"] = z;
        d["log_ratio"] = lr;
        d["psi_target"] = psi;
        return d;
      },
      py::arg("n"), py::arg("z"), py::arg("backend") = "float64");
  m.def(
      "kappa4_of_Yn",
      [](unsigned n, unsigned digits) {
        const auto y = kappa4_of_Yn(n, Backend::bigfloat(digits));
        return py::make_tuple(f64(y.kappa3), f64(y.kappa4));
      },
      py::arg("n"), py::arg("digits") = kDefaultDigits, "(kappa_3(Y_n), kappa_4(Y_n)).");
  m.def(
      "moderate_deviation_profile",
      [](unsigned n, double x, const std::string& backend) {
        const auto md = moderate_deviation_profile(n, x, Backend::parse(backend));
        py::dict d;
        d["t_n"] = f64(md.t_n);
        d["lhs_upper"] = f64(md.lhs_upper);
        d["lhs_lower"] = f64(md.lhs_lower);
        d["rhs_upper"] = f64(md.rhs_upper);
        d["rhs_lower"] = f64(md.rhs_lower);
        d["upper_beyond_support"] = md.upper_beyond_support;
        d["lower_beyond_support"] = md.lower_beyond_support;
        return d;
      },
      py::arg("n"), py::arg("x"), py::arg("backend") = "float64");
  m.def(
      "local_limit_profile",
      [](unsigned n, double delta, double x, const std::vector<std::pair<py::object, py::object>>& window,
         const std::string& backend) {
        Window w;
        for (const auto& [lo, hi] : window) w.emplace_back(from_py(lo), from_py(hi));
        const auto ll = local_limit_profile(n, delta, x, w, Backend::parse(backend));
        return py::make_tuple(f64(ll.scaled_prob), f64(ll.target_density_mass));
      },
      py::arg("n"), py::arg("delta"), py::arg("x"), py::arg("window"), py::arg("backend") = "float64",
      "(scaled_prob, target_density_mass).");

  m.def("reflect_into_triangle", [](double u, double v) {
    const Point p = reflect_into_triangle(u, v);
    return py::make_tuple(p.x, p.y);
  });
  m.def(
      "chain_vertex_count",
      [](const std::vector<std::pair<double, double>>& pts) {
        std::vector<Point> v;
        for (const auto& [x, y] : pts) v.push_back({x, y});
        return chain_vertex_count(std::move(v));
      },
      py::arg("points"));
  m.def(
      "simulate",
      [](unsigned n, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
        SimResult r;
        {
          py::gil_scoped_release release;
          r = run_simulation({n, trials, seed, workers});
        }
        const auto cmp = compare_empirical(r, pmf_by_recurrence<Rational>(n));
        py::dict d;
        d["counts"] = r.counts;
        d["empirical_pmf"] = r.empirical_pmf;
        d["empirical_mean"] = r.empirical_mean();
        d["max_abs_dev"] = cmp.max_abs_dev;
        d["chi_square"] = cmp.chi_square;
        d["dof"] = cmp.dof;
        d["chi_square_ok"] = cmp.chi_square_ok;
        return d;
      },
      py::arg("n"), py::arg("trials"), py::arg("seed") = 42, py::arg("workers") = 1);

  m.def(
      "verify",
      [](const std::string& suite, unsigned nmax) {
        VerifyOptions o;
        o.nmax = nmax;
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(suite, o);
        }
        py::list checks;
        for (const auto& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          checks.append(d);
        }
        return py::make_tuple(r.passed(), checks);
      },
      py::arg("suite"), py::arg("nmax") = 0);
}
