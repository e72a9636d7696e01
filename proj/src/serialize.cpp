#include "cchain/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace cchain {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
Json value_json(const T& x, unsigned digits) {
  if constexpr (is_exact_v<T>) {
    return rational_json(x);
  } else if constexpr (std::is_same_v<T, double>) {
    (void)digits;
    return decimal(x);
  } else {
    return decimal(x, digits);
  }
}

// Columns for one scalar: num,den for exact values, a single decimal otherwise.
template <class T>
std::vector<std::string> value_cells(const T& x, unsigned digits) {
  if constexpr (is_exact_v<T>) {
    return {numerator(x).str(), denominator(x).str()};
  } else if constexpr (std::is_same_v<T, double>) {
    (void)digits;
    return {decimal(x)};
  } else {
    return {decimal(x, digits)};
  }
}

template <class T>
std::vector<std::string> value_header(const std::string& name) {
  if constexpr (is_exact_v<T>) {
    return {name + "_num", name + "_den"};
  } else {
    return {name};
  }
}

std::string endpoint(const Rational& q) {
  if (auto d = exact_decimal(q)) return *d;
  return to_fraction_string(q);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out.str();
}

Json rational_json(const Rational& q) { return {{"num", numerator(q).str()}, {"den", denominator(q).str()}}; }

Rational rational_from_json(const Json& j) {
  return Rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

std::string decimal(const BigFloat& x, unsigned digits) { return to_decimal_string(x, digits); }

std::string decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
Json pmf_json(const VertexPmf<T>& pmf, unsigned digits) {
  Json entries = Json::array();
  for (unsigned k = 1; k <= pmf.n; ++k) {
    Json e = {{"k", k}};
    if constexpr (is_exact_v<T>) {
      e["num"] = numerator(pmf.at(k)).str();
      e["den"] = denominator(pmf.at(k)).str();
    } else {
      e["p"] = value_json(pmf.at(k), digits);
    }
    entries.push_back(std::move(e));
  }
  return {{"n", pmf.n}, {"backend", pmf.backend.name()}, {"pmf", std::move(entries)}};
}

template <class T>
Table pmf_table(const VertexPmf<T>& pmf, unsigned digits) {
  Table t;
  if constexpr (is_exact_v<T>) {
    t.header = {"k", "num", "den"};
  } else {
    t.header = {"k", "p"};
  }
  for (unsigned k = 1; k <= pmf.n; ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (auto& c : value_cells(pmf.at(k), digits)) row.push_back(std::move(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json roots_json(const RootEnclosureSet& set, unsigned digits) {
  Json list = Json::array();
  for (std::size_t i = 0; i < set.enclosures.size(); ++i) {
    const auto& e = set.enclosures[i];
    list.push_back({{"k", i + 1},
                    {"lo", endpoint(e.lo)},
                    {"hi", endpoint(e.hi)},
                    {"mid", to_decimal_string(e.midpoint(), digits)},
                    {"exact", e.exact()}});
  }
  return {{"n", set.n}, {"enclosures", std::move(list)}};
}

Table roots_table(const RootEnclosureSet& set, unsigned digits) {
  Table t{{"k", "lo", "hi", "mid", "exact"}, {}};
  for (std::size_t i = 0; i < set.enclosures.size(); ++i) {
    const auto& e = set.enclosures[i];
    t.rows.push_back({std::to_string(i + 1), endpoint(e.lo), endpoint(e.hi), to_decimal_string(e.midpoint(), digits),
                      e.exact() ? "true" : "false"});
  }
  return t;
}

Json factorization_json(const BernoulliFactorization& f, unsigned digits) {
  Json list = Json::array();
  for (std::size_t i = 0; i < f.success_probs.size(); ++i) {
    list.push_back({{"k", i + 1},
                    {"q", to_decimal_string(f.success_probs[i], digits)},
                    {"radius", to_decimal_string(f.error_radii[i], 3)},
                    {"q_exact", rational_json(f.success_probs[i])}});
  }
  return {{"n", f.n}, {"success_probs", std::move(list)}};
}

Table factorization_table(const BernoulliFactorization& f, unsigned digits) {
  Table t{{"k", "q", "radius"}, {}};
  for (std::size_t i = 0; i < f.success_probs.size(); ++i) {
    t.rows.push_back({std::to_string(i + 1), to_decimal_string(f.success_probs[i], digits),
                      to_decimal_string(f.error_radii[i], 3)});
  }
  return t;
}

template <class T>
Json cumulants_json(const CumulantReport<T>& r, unsigned digits) {
  Json kappa = Json::array();
  for (unsigned k = 1; k <= r.kmax(); ++k) kappa.push_back({{"k", k}, {"value", value_json(r.kappa(k), digits)}});
  return {{"n", r.n},
          {"source", to_string(r.source)},
          {"backend", r.backend.name()},
          {"mean", value_json(r.mean, digits)},
          {"variance", value_json(r.variance, digits)},
          {"L_cubed", value_json(r.L_cubed, digits)},
          {"cumulants", std::move(kappa)}};
}

template <class T>
Table cumulants_table(const CumulantReport<T>& r, unsigned digits) {
  Table t;
  t.header = {"k"};
  for (auto& h : value_header<T>("kappa")) t.header.push_back(h);
  for (unsigned k = 1; k <= r.kmax(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (auto& c : value_cells(r.kappa(k), digits)) row.push_back(std::move(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json bound_json(const std::vector<CumulantBoundEntry>& entries) {
  Json list = Json::array();
  for (const auto& e : entries) {
    list.push_back({{"k", e.k}, {"lhs", decimal(e.lhs)}, {"rhs", rational_json(e.rhs)}, {"ok", e.ok}});
  }
  return list;
}

Json pf_json(const PfReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"kind", v.kind}, {"rows", v.rows}, {"cols", v.cols}, {"value", rational_json(v.value)}});
  }
  return {{"n", r.n},
          {"max_minor_order_checked", r.max_minor_order_checked},
          {"minors_checked", r.minors_checked},
          {"exact_evaluations", r.exact_evaluations},
          {"min_value", rational_json(r.min_minor_value)},
          {"min_value_approx", to_decimal_string(r.min_minor_value, 12)},
          {"min_rows", r.min_rows},
          {"min_cols", r.min_cols},
          {"log_concavity_ok", r.log_concavity_ok},
          {"ok", r.ok()},
          {"violations", std::move(violations)}};
}

Json simulation_json(const SimResult& r) {
  Json out = {{"n", r.n},
              {"trials", r.trials},
              {"seed", r.seed},
              {"counts", r.counts},
              {"empirical_mean", decimal(r.empirical_mean())}};
  Json pmf = Json::array();
  for (double p : r.empirical_pmf) pmf.push_back(decimal(p));
  out["empirical_pmf"] = std::move(pmf);
  if (r.max_abs_dev) out["max_abs_dev"] = decimal(*r.max_abs_dev);
  return out;
}

Table simulation_table(const SimResult& r) {
  Table t{{"k", "count", "empirical_p"}, {}};
  for (unsigned k = 1; k <= r.n; ++k) {
    t.rows.push_back({std::to_string(k), std::to_string(r.counts[k - 1]), decimal(r.empirical_pmf[k - 1])});
  }
  return t;
}

Json comparison_json(const EmpiricalComparison& c) {
  return {{"max_abs_dev", decimal(c.max_abs_dev)},
          {"chi_square", decimal(c.chi_square)},
          {"dof", c.dof},
          {"chi_square_quantile_999", decimal(c.chi_square_quantile)},
          {"chi_square_ok", c.chi_square_ok}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json manifest_json(const RunManifest& m) {
  return {{"subcommand", m.subcommand},
          {"parameters", m.parameters},
          {"version", m.version},
          {"checksum", m.checksum}};
}

template Json pmf_json<Rational>(const VertexPmf<Rational>&, unsigned);
template Json pmf_json<double>(const VertexPmf<double>&, unsigned);
template Json pmf_json<BigFloat>(const VertexPmf<BigFloat>&, unsigned);
template Table pmf_table<Rational>(const VertexPmf<Rational>&, unsigned);
template Table pmf_table<double>(const VertexPmf<double>&, unsigned);
template Table pmf_table<BigFloat>(const VertexPmf<BigFloat>&, unsigned);
template Json cumulants_json<Rational>(const CumulantReport<Rational>&, unsigned);
template Json cumulants_json<double>(const CumulantReport<double>&, unsigned);
template Json cumulants_json<BigFloat>(const CumulantReport<BigFloat>&, unsigned);
template Table cumulants_table<Rational>(const CumulantReport<Rational>&, unsigned);
template Table cumulants_table<double>(const CumulantReport<double>&, unsigned);
template Table cumulants_table<BigFloat>(const CumulantReport<BigFloat>&, unsigned);

}  // namespace cchain
