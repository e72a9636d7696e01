#include "cchain/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace cchain {

namespace {

template <class T>
T q(long long num, long long den) {
  return from_rational<T>(make_rational(num, den));
}

template <class T>
T inv(unsigned long long k) {
  if constexpr (is_exact_v<T>) {
    return Rational(Integer(1), Integer(k));
  } else {
    return from_int<T>(1) / T(static_cast<double>(k));
  }
}

template <class T>
HarmonicCache<T> zero_cache() {
  const T z = from_int<T>(0);
  return {0, z, z, z, z, z};
}

template <class T>
void advance(HarmonicCache<T>& h) {
  const unsigned long long k = ++h.n;
  const T k1 = inv<T>(k);
  const T k2 = inv<T>(k * k);
  h.H1 += k1;
  h.H2 += k2;
  h.H3 += k2 * k1;
  h.HH2 += h.H2;
  h.H1_over_k2 += h.H1 * k2;
}

}  // namespace

template <class T>
HarmonicCache<T> harmonic_cache(unsigned n) {
  auto h = zero_cache<T>();
  while (h.n < n) advance(h);
  return h;
}

template <class T>
std::vector<HarmonicCache<T>> harmonic_table(unsigned nmax) {
  std::vector<HarmonicCache<T>> out{zero_cache<T>()};
  out.reserve(nmax + 1);
  for (unsigned m = 1; m <= nmax; ++m) {
    auto h = out.back();
    advance(h);
    out.push_back(std::move(h));
  }
  return out;
}

template <class T>
T mean_closed_form(const HarmonicCache<T>& h) {
  if (h.n == 0) throw std::invalid_argument("moments need n >= 1");
  return q<T>(2, 3) * h.H1 + q<T>(1, 3);
}

template <class T>
T second_moment_closed_form(const HarmonicCache<T>& h) {
  if (h.n == 0) throw std::invalid_argument("moments need n >= 1");
  const long long n = h.n;
  return q<T>(4, 9) * h.H1 * h.H1 + q<T>(22, 27) * h.H1 + q<T>(4, 9) * h.H2 - q<T>(25, 27) + q<T>(4, 9 * (n + 1));
}

template <class T>
T variance_closed_form(const HarmonicCache<T>& h) {
  if (h.n == 0) throw std::invalid_argument("moments need n >= 1");
  const long long n = h.n;
  return q<T>(10, 27) * h.H1 + q<T>(4, 9) * h.H2 - q<T>(28, 27) + q<T>(4, 9 * (n + 1));
}

template <class T>
T third_cumulant_closed_form(const HarmonicCache<T>& h) {
  if (h.n == 0) throw std::invalid_argument("moments need n >= 1");
  const long long n = h.n;
  return q<T>(14, 81) * h.H1 + q<T>(20, 27) * h.H2 + q<T>(16, 27) * h.H3 - q<T>(16, 9) * h.H1_over_k2 +
         q<T>(172, 81) - q<T>(8, 9) * (q<T>(1, n) + q<T>(1, n + 1)) * h.H1 - q<T>(28, 27 * (n + 1));
}

std::string to_string(CumulantSource s) {
  switch (s) {
    case CumulantSource::closed_form: return "closed_form";
    case CumulantSource::pgf: return "pgf";
    case CumulantSource::factorization: return "factorization";
  }
  return "unknown";
}

const std::vector<std::vector<Integer>>& stirling2_table() {
  static const auto table = [] {
    std::vector<std::vector<Integer>> s(kMaxMomentOrder + 1, std::vector<Integer>(kMaxMomentOrder + 1, Integer(0)));
    s[0][0] = 1;
    for (unsigned k = 1; k <= kMaxMomentOrder; ++k) {
      for (unsigned j = 1; j <= k; ++j) s[k][j] = Integer(j) * s[k - 1][j] + s[k - 1][j - 1];
    }
    return s;
  }();
  return table;
}

template <class T>
std::vector<T> raw_from_factorial(const std::vector<T>& factorial) {
  if (factorial.size() > kMaxMomentOrder) throw std::invalid_argument("moment order above 12");
  const auto& s = stirling2_table();
  std::vector<T> raw;
  for (std::size_t k = 1; k <= factorial.size(); ++k) {
    T m = from_int<T>(0);
    for (std::size_t j = 1; j <= k; ++j) m += from_rational<T>(Rational(s[k][j])) * factorial[j - 1];
    raw.push_back(m);
  }
  return raw;
}

template <class T>
std::vector<T> cumulants_from_raw(const std::vector<T>& raw) {
  // kappa_k = m_k - sum_{j=1}^{k-1} C(k-1, j-1) kappa_j m_{k-j}
  std::vector<T> kappa;
  for (std::size_t k = 1; k <= raw.size(); ++k) {
    T c = raw[k - 1];
    long long binom = 1;  // C(k-1, j-1)
    for (std::size_t j = 1; j < k; ++j) {
      c -= from_int<T>(binom) * kappa[j - 1] * raw[k - j - 1];
      binom = binom * static_cast<long long>(k - j) / static_cast<long long>(j);
    }
    kappa.push_back(c);
  }
  return kappa;
}

template <class T>
CumulantReport<T> cumulants_from_pgf(unsigned n, unsigned kmax) {
  if (kmax < 1 || kmax > kMaxMomentOrder) throw std::invalid_argument("kmax must be in 1..12");
  const unsigned order = std::max(kmax, 3u);
  CumulantReport<T> r;
  r.n = n;
  r.cumulants = cumulants_from_raw(raw_from_factorial(factorial_moments<T>(n, order)));
  r.mean = r.cumulants[0];
  r.variance = r.cumulants[1];
  r.L_cubed = r.cumulants[2];
  r.source = CumulantSource::pgf;
  r.backend = backend_of<T>();
  return r;
}

template <class T>
CumulantReport<T> cumulants_closed_form(unsigned n) {
  const auto h = harmonic_cache<T>(n);
  CumulantReport<T> r;
  r.n = n;
  r.mean = mean_closed_form(h);
  r.variance = variance_closed_form(h);
  r.L_cubed = third_cumulant_closed_form(h);
  r.cumulants = {r.mean, r.variance, r.L_cubed};
  r.source = CumulantSource::closed_form;
  r.backend = backend_of<T>();
  return r;
}

FactorizationCumulants cumulants_from_factorization(const BernoulliFactorization& f, unsigned kmax) {
  if (kmax < 1 || kmax > kMaxFactorizationOrder) throw std::invalid_argument("factorization cumulants need kmax in 1..4");
  FactorizationCumulants out;
  out.cumulants.assign(kmax, Rational(0));
  out.radius = 0;
  for (std::size_t i = 0; i < f.success_probs.size(); ++i) {
    const Rational& p = f.success_probs[i];
    const Rational p1 = Rational(1) - p;
    const Rational per[4] = {p, p * p1, p * p1 * (1 - 2 * p), p * p1 * (1 - 6 * p + 6 * p * p)};
    for (unsigned k = 0; k < kmax; ++k) out.cumulants[k] += per[k];
    out.radius += f.error_radii[i];
  }
  return out;
}

std::vector<CumulantBoundEntry> cumulant_bound_report(unsigned n, unsigned kmax) {
  if (n < 2) throw std::invalid_argument("cumulant bound needs n >= 2 (variance is 0 at n = 1)");
  if (kmax < 3 || kmax > kMaxMomentOrder) throw std::invalid_argument("kmax must be in 3..12");
  const auto r = cumulants_from_pgf<Rational>(n, kmax);
  const Rational var = r.variance;
  const double sigma = std::sqrt(to_double(var));
  std::vector<CumulantBoundEntry> out;
  Integer fact(2);
  for (unsigned k = 3; k <= kmax; ++k) {
    fact *= k;
    CumulantBoundEntry e;
    e.k = k;
    Rational ratio_pow(1), var_pow(1);
    for (unsigned i = 0; i + 2 < k; ++i) ratio_pow *= Rational(4) / var;
    for (unsigned i = 0; i < k; ++i) var_pow *= var;
    e.rhs = Rational(fact) * ratio_pow;
    const Rational& kappa = r.kappa(k);
    e.ok = kappa * kappa <= e.rhs * e.rhs * var_pow;
    e.lhs = std::abs(to_double(kappa)) / std::pow(sigma, static_cast<double>(k));
    out.push_back(std::move(e));
  }
  return out;
}

AsymptoticRatios asymptotic_ratios(unsigned n) {
  if (n < 2) throw std::invalid_argument("asymptotic ratios need n >= 2");
  const auto h = harmonic_cache<BigFloat>(n);
  const BigFloat ln = log(BigFloat(n));
  AsymptoticRatios r;
  r.mean_ratio = mean_closed_form(h) / (q<BigFloat>(2, 3) * ln);
  r.var_ratio = variance_closed_form(h) / (q<BigFloat>(10, 27) * ln);
  r.kappa3_ratio = third_cumulant_closed_form(h) / (q<BigFloat>(14, 81) * ln);
  return r;
}

#define CCHAIN_INSTANTIATE(T)                                                         \
  template HarmonicCache<T> harmonic_cache<T>(unsigned);                              \
  template std::vector<HarmonicCache<T>> harmonic_table<T>(unsigned);                 \
  template T mean_closed_form<T>(const HarmonicCache<T>&);                            \
  template T second_moment_closed_form<T>(const HarmonicCache<T>&);                   \
  template T variance_closed_form<T>(const HarmonicCache<T>&);                        \
  template T third_cumulant_closed_form<T>(const HarmonicCache<T>&);                  \
  template std::vector<T> raw_from_factorial<T>(const std::vector<T>&);               \
  template std::vector<T> cumulants_from_raw<T>(const std::vector<T>&);               \
  template CumulantReport<T> cumulants_from_pgf<T>(unsigned, unsigned);               \
  template CumulantReport<T> cumulants_closed_form<T>(unsigned);

CCHAIN_INSTANTIATE(Rational)
CCHAIN_INSTANTIATE(double)
CCHAIN_INSTANTIATE(BigFloat)

#undef CCHAIN_INSTANTIATE

}  // namespace cchain
