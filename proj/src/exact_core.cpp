#include "cchain/exact_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cchain {

namespace {

void require_positive_n(unsigned n) {
  if (n == 0) {
    throw std::invalid_argument("n must be at least 1: with no sample points the vertex number is undefined");
  }
}

template <class T>
struct StepCoeffs {
  T a, b, c;
};

template <class T>
StepCoeffs<T> step_coeffs(unsigned m) {
  if constexpr (is_exact_v<T>) {
    const auto mm = static_cast<long long>(m);
    return {make_rational(2, mm * (mm + 1)), make_rational(2 * (mm - 1), mm + 1),
            make_rational((mm - 1) * (mm - 2), mm * (mm + 1))};
  } else {
    const T mm = from_int<T>(m);
    const T one = from_int<T>(1), two = from_int<T>(2);
    return {two / (mm * (mm + one)), two * (mm - one) / (mm + one), (mm - one) * (mm - two) / (mm * (mm + one))};
  }
}

// next = (a z + b) cur - c prev, all in the monomial basis.
template <class T>
std::vector<T> recurrence_step(const std::vector<T>& cur, const std::vector<T>& prev, const StepCoeffs<T>& s) {
  std::vector<T> next(cur.size() + 1, from_int<T>(0));
  for (std::size_t i = 0; i < cur.size(); ++i) {
    next[i + 1] += s.a * cur[i];
    next[i] += s.b * cur[i];
  }
  for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= s.c * prev[i];
  return next;
}

VertexPmf<double> pmf_first_order_form(unsigned n) {
  // prev[m] = p_{k-1}^(m), cur[m] = p_k^(m) for m = 0..n.
  std::vector<double> prev(n + 1, 0.0), cur(n + 1, 0.0);
  prev[0] = 1.0;
  VertexPmf<double> pmf{n, std::vector<double>(n, 0.0), Backend::float64()};
  for (unsigned k = 1; k <= n; ++k) {
    double running = 0.0;  // sum_{j<m} prev[j]
    double weighted = 0.0;  // sum_{j<m} (m - j) prev[j]
    bool any = false;
    cur[0] = 0.0;
    for (unsigned m = 1; m <= n; ++m) {
      running += prev[m - 1];
      weighted += running;
      const double md = m;
      cur[m] = m < k ? 0.0 : 2.0 * weighted / (md * (md + 1.0));
      any = any || cur[m] != 0.0;
    }
    pmf.probs[k - 1] = cur[n];
    if (!any) break;  // every later row underflows as well
    std::swap(prev, cur);
  }
  return pmf;
}

}  // namespace

RecurrenceCoeffs recurrence_coeffs(unsigned n) {
  if (n < 2) throw std::invalid_argument("recurrence coefficients are defined for n >= 2");
  const auto m = static_cast<long long>(n);
  RecurrenceCoeffs r;
  r.n = n;
  r.a = make_rational(2, m * (m + 1));
  r.b = make_rational(2 * (m - 1), m + 1);
  r.c = make_rational((m - 1) * (m - 2), m * (m + 1));
  r.beta = make_rational(m * (m - 1));
  r.gamma = make_rational(m * (m - 1) * (m - 1) * (m - 2), 4);
  return r;
}

Rational top_probability(unsigned n) {
  Integer den(1);
  for (unsigned i = 2; i <= n; ++i) den *= i;
  den *= den * (n + 1);  // n! * (n+1)!
  return Rational(Integer(Integer(1) << n), den);
}

template <class T>
std::vector<PolySeq<T>> pgf_table_by_recurrence(unsigned nmax) {
  std::vector<PolySeq<T>> table;
  table.reserve(nmax + 1);
  table.push_back({Family::G, {from_int<T>(1)}});
  if (nmax == 0) return table;
  table.push_back({Family::G, {from_int<T>(0), from_int<T>(1)}});
  for (unsigned m = 2; m <= nmax; ++m) {
    table.push_back({Family::G, recurrence_step(table[m - 1].coeffs, table[m - 2].coeffs, step_coeffs<T>(m))});
  }
  return table;
}

template <class T>
PolySeq<T> pgf_by_recurrence(unsigned n) {
  std::vector<T> prev{from_int<T>(1)};
  if (n == 0) return {Family::G, prev};
  std::vector<T> cur{from_int<T>(0), from_int<T>(1)};
  for (unsigned m = 2; m <= n; ++m) {
    auto next = recurrence_step(cur, prev, step_coeffs<T>(m));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {Family::G, std::move(cur)};
}

template <class T>
VertexPmf<T> pmf_by_recurrence(unsigned n) {
  require_positive_n(n);
  if constexpr (std::is_same_v<T, double>) {
    return pmf_first_order_form(n);
  } else {
    return to_pmf(pgf_by_recurrence<T>(n));
  }
}

VertexPmf<Rational> pmf_direct_compositions(unsigned n, unsigned cap) {
  require_positive_n(n);
  if (n > cap) {
    throw std::invalid_argument("composition oracle enumerates 2^(n-1) compositions; n = " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(cap));
  }
  // A composition (i_1..i_k) is determined by its set S of partial sums
  // s_j = i_1 + ... + i_j, with n in S. Its term is
  //   2^k prod_j i_j / prod_j s_j (s_j + 1),
  // and over the common denominator n!(n+1)! = prod_{m=1}^n m(m+1) the
  // numerator is 2^k prod_j i_j prod_{m not in S} m(m+1).
  std::vector<Integer> acc(n + 1, Integer(0));
  auto walk = [&](auto&& self, unsigned m, unsigned last, unsigned parts, const Integer& prod) -> void {
    if (m == n) {
      acc[parts + 1] += prod * (n - last);
      return;
    }
    self(self, m + 1, m, parts + 1, Integer(prod * (m - last)));
    self(self, m + 1, last, parts, Integer(prod * (static_cast<unsigned long>(m) * (m + 1))));
  };
  walk(walk, 1, 0, 0, Integer(1));

  Integer common(1);
  for (unsigned m = 1; m <= n; ++m) common *= static_cast<unsigned long>(m) * (m + 1);
  VertexPmf<Rational> pmf{n, std::vector<Rational>(n), Backend::exact()};
  for (unsigned k = 1; k <= n; ++k) pmf.probs[k - 1] = Rational(Integer(acc[k] << k), common);
  return pmf;
}

Rational weight(unsigned k, unsigned n) {
  if (k < 1 || k >= n) {
    throw std::invalid_argument("weight w_{k,n} needs 1 <= k <= n-1, got k = " + std::to_string(k) +
                                ", n = " + std::to_string(n));
  }
  Rational sum(0);
  for (unsigned i = k + 1; i <= n; ++i) {
    const auto ii = static_cast<long long>(i);
    sum += make_rational(1, ii * ii * (ii * ii - 1));
  }
  return Rational(2 * static_cast<long long>(k) * (k + 1)) * sum;
}

std::vector<PolySeq<Rational>> pgf_table_by_weights(unsigned nmax) {
  std::vector<PolySeq<Rational>> table;
  table.push_back({Family::G, {Rational(1)}});
  if (nmax == 0) return table;
  table.push_back({Family::G, {Rational(0), Rational(1)}});

  // tail[i] = sum_{t=2}^{i} 1/(t^2 (t^2 - 1)), so w_{k,m} = 2k(k+1) (tail[m] - tail[k]).
  std::vector<Rational> tail(nmax + 1, Rational(0));
  for (unsigned t = 2; t <= nmax; ++t) {
    const auto tt = static_cast<long long>(t);
    tail[t] = tail[t - 1] + make_rational(1, tt * tt * (tt * tt - 1));
  }

  for (unsigned m = 2; m <= nmax; ++m) {
    std::vector<Rational> s(m, Rational(0));  // sum_k w_{k,m} G_k, degree m-1
    for (unsigned k = 1; k < m; ++k) {
      const Rational w = Rational(2 * static_cast<long long>(k) * (k + 1)) * (tail[m] - tail[k]);
      const auto& gk = table[k].coeffs;
      for (std::size_t i = 0; i < gk.size(); ++i) s[i] += w * gk[i];
    }
    // G_m = z + z s - s
    std::vector<Rational> g(m + 1, Rational(0));
    g[1] = Rational(1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      g[i + 1] += s[i];
      g[i] -= s[i];
    }
    table.push_back({Family::G, std::move(g)});
  }
  return table;
}

VertexPmf<Rational> pmf_by_weights(unsigned n) {
  require_positive_n(n);
  return to_pmf(pgf_table_by_weights(n).back());
}

std::vector<PolySeq<Integer>> monic_table(unsigned nmax) {
  std::vector<PolySeq<Integer>> table;
  table.push_back({Family::H, {Integer(1)}});
  if (nmax == 0) return table;
  table.push_back({Family::H, {Integer(0), Integer(1)}});
  for (unsigned m = 2; m <= nmax; ++m) {
    const auto mm = static_cast<long long>(m);
    const Integer beta(mm * (mm - 1));
    const Integer gamma(mm * (mm - 1) * (mm - 1) * (mm - 2) / 4);
    const auto& cur = table[m - 1].coeffs;
    const auto& prev = table[m - 2].coeffs;
    std::vector<Integer> next(cur.size() + 1, Integer(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] += beta * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= gamma * prev[i];
    table.push_back({Family::H, std::move(next)});
  }
  return table;
}

PolySeq<Integer> monic_poly(unsigned n) { return monic_table(n).back(); }

template <class T>
T pgf_eval(unsigned n, const T& z) {
  require_positive_n(n);
  if constexpr (std::is_same_v<T, double>) {
    if (!std::isfinite(z)) throw std::invalid_argument("pgf_eval needs a finite argument");
  }
  T prev = from_int<T>(1);
  T cur = z;
  for (unsigned m = 2; m <= n; ++m) {
    const auto s = step_coeffs<T>(m);
    T next = (s.a * z + s.b) * cur - s.c * prev;
    prev = std::move(cur);
    cur = std::move(next);
    if constexpr (std::is_same_v<T, double>) {
      if (!std::isfinite(cur)) {
        throw std::overflow_error("G_" + std::to_string(n) + "(z) overflows float64 at step " + std::to_string(m) +
                                  "; use the bigfloat backend");
      }
    }
  }
  return cur;
}

template <class T>
std::vector<T> factorial_moments(unsigned n, unsigned kmax) {
  require_positive_n(n);
  if (kmax < 1 || kmax > kMaxMomentOrder) {
    throw std::invalid_argument("factorial moment order must be in 1.." + std::to_string(kMaxMomentOrder) + ", got " +
                                std::to_string(kmax));
  }
  // d[j] = G_m^{(j)}(1); G_0 = 1, G_1 = z.
  std::vector<T> prev(kmax + 1, from_int<T>(0)), cur(kmax + 1, from_int<T>(0)), next(kmax + 1);
  prev[0] = from_int<T>(1);
  cur[0] = from_int<T>(1);
  cur[1] = from_int<T>(1);
  for (unsigned m = 2; m <= n; ++m) {
    const auto s = step_coeffs<T>(m);
    const T ab = s.a + s.b;
    next[0] = ab * cur[0] - s.c * prev[0];
    for (unsigned j = 1; j <= kmax; ++j) {
      next[j] = ab * cur[j] + from_int<T>(j) * s.a * cur[j - 1] - s.c * prev[j];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return {cur.begin() + 1, cur.end()};
}

#define CCHAIN_INSTANTIATE(T)                                              \
  template PolySeq<T> pgf_by_recurrence<T>(unsigned);                      \
  template std::vector<PolySeq<T>> pgf_table_by_recurrence<T>(unsigned);   \
  template VertexPmf<T> pmf_by_recurrence<T>(unsigned);                    \
  template T pgf_eval<T>(unsigned, const T&);                              \
  template std::vector<T> factorial_moments<T>(unsigned, unsigned);

CCHAIN_INSTANTIATE(Rational)
CCHAIN_INSTANTIATE(double)
CCHAIN_INSTANTIATE(BigFloat)

#undef CCHAIN_INSTANTIATE

}  // namespace cchain
