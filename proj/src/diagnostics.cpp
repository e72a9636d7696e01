#include "cchain/diagnostics.hpp"

#include "cchain/exact_core.hpp"
#include "cchain/moments.hpp"

#include <algorithm>
#include <stdexcept>

namespace cchain {

namespace {

unsigned working_digits(const Backend& b) {
  return std::max(b.kind == BackendKind::bigfloat ? b.digits : 0u, kDiagnosticDigits);
}

void require_n(unsigned n) {
  if (n < 2) throw std::invalid_argument("diagnostics need n >= 2 (f_0(T_1) is constant)");
}

// Copy at the current working precision, whatever the source precision was.
BigFloat widen(const BigFloat& x) {
  BigFloat y;
  mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
  return y;
}

BigFloat pi() {
  BigFloat p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

std::vector<BigFloat> masses(unsigned n, const Backend& b) {
  std::vector<BigFloat> out;
  out.reserve(n);
  switch (b.kind) {
    case BackendKind::exact:
      for (const auto& p : pmf_by_recurrence<Rational>(n).probs) out.push_back(to_bigfloat(p));
      break;
    case BackendKind::float64:
      for (double p : pmf_by_recurrence<double>(n).probs) out.emplace_back(p);
      break;
    case BackendKind::bigfloat: {
      std::vector<BigFloat> raw;
      {
        BigFloatScope scope(b.digits);
        raw = pmf_by_recurrence<BigFloat>(n).probs;
      }
      for (const auto& p : raw) out.push_back(widen(p));
      break;
    }
  }
  return out;
}

template <class T>
std::vector<BigFloat> pgf_cumulants(unsigned n, unsigned kmax) {
  std::vector<BigFloat> out;
  for (const auto& c : cumulants_from_pgf<T>(n, kmax).cumulants) out.push_back(to_bigfloat(c));
  return out;
}

std::vector<BigFloat> cumulants_for(unsigned n, unsigned kmax, const Backend& b) {
  switch (b.kind) {
    case BackendKind::exact: return pgf_cumulants<Rational>(n, kmax);
    case BackendKind::float64: return pgf_cumulants<double>(n, kmax);
    case BackendKind::bigfloat: break;
  }
  std::vector<BigFloat> raw;
  {
    BigFloatScope scope(b.digits);
    raw = cumulants_from_pgf<BigFloat>(n, kmax).cumulants;
  }
  std::vector<BigFloat> out;
  for (const auto& c : raw) out.push_back(widen(c));
  return out;
}

// L_n = kappa_3^(1/3) from the closed form; fatal if kappa_3 <= 0.
BigFloat third_root_scale(const HarmonicCache<BigFloat>& h) {
  const BigFloat k3 = third_cumulant_closed_form(h);
  if (k3 <= 0) throw std::logic_error("third cumulant is not positive at n = " + std::to_string(h.n));
  return cbrt(k3);
}

}  // namespace

BigFloat normal_upper_tail(const BigFloat& t) { return erfc(t / sqrt(BigFloat(2))) / 2; }

NormalizedLattice normalized_lattice(unsigned n, const Backend& backend) {
  require_n(n);
  BigFloatScope scope(working_digits(backend));
  const auto h = harmonic_cache<BigFloat>(n);
  NormalizedLattice lat;
  lat.n = n;
  lat.mean = mean_closed_form(h);
  lat.sigma = sqrt(variance_closed_form(h));
  const auto m = masses(n, backend);
  lat.points.reserve(n);
  for (unsigned k = 1; k <= n; ++k) lat.points.push_back({(BigFloat(k) - lat.mean) / lat.sigma, m[k - 1]});
  return lat;
}

BigFloat kolmogorov_distance(unsigned n, const Backend& backend) {
  BigFloatScope scope(working_digits(backend));
  const auto lat = normalized_lattice(n, backend);
  // tail[k] = P(X >= t_k), summed from the top so small tails stay accurate.
  std::vector<BigFloat> tail(n + 1, BigFloat(0));
  for (unsigned k = n; k-- > 0;) tail[k] = tail[k + 1] + lat.points[k].mass;
  BigFloat best(0);
  for (unsigned k = 0; k < n; ++k) {
    const BigFloat q = normal_upper_tail(lat.points[k].t);
    best = std::max(best, BigFloat(abs(tail[k] - q)));
    best = std::max(best, BigFloat(abs(tail[k + 1] - q)));
  }
  return best;
}

ModGaussianProfile mod_gaussian_profile(unsigned n, const std::vector<double>& z_grid, const Backend& backend) {
  require_n(n);
  for (double z : z_grid) {
    if (!(z >= -2 && z <= 2)) throw std::invalid_argument("mod-Gaussian grid values must lie in [-2, 2]");
  }
  BigFloatScope scope(working_digits(backend));
  const auto h = harmonic_cache<BigFloat>(n);
  const BigFloat mean = mean_closed_form(h);
  ModGaussianProfile prof;
  prof.n = n;
  prof.L = third_root_scale(h);
  prof.w_n = variance_closed_form(h) / (prof.L * prof.L);
  prof.z_grid = z_grid;
  const auto m = masses(n, backend);
  // Dividing by the summed mass keeps phi_n(0) = 1 exactly on rounded pmfs.
  BigFloat total(0);
  for (const auto& p : m) total += p;
  for (double zd : z_grid) {
    const BigFloat z(zd);
    BigFloat phi(0);
    for (unsigned k = 1; k <= n; ++k) {
      // Masses that underflowed to zero contribute nothing (and must not meet
      // an overflowing exponential).
      if (m[k - 1] == 0) continue;
      phi += m[k - 1] * exp(z * (BigFloat(k) - mean) / prof.L);
    }
    prof.log_ratio.push_back(log(phi / total) - prof.w_n * z * z / 2);
    prof.psi_target.push_back(z * z * z / 6);
  }
  return prof;
}

YnCumulants kappa4_of_Yn(unsigned n, const Backend& backend) {
  require_n(n);
  BigFloatScope scope(working_digits(backend));
  const auto h = harmonic_cache<BigFloat>(n);
  const BigFloat L = third_root_scale(h);
  const auto kappa = cumulants_for(n, 4, backend);
  const BigFloat L3 = L * L * L;
  return {kappa[2] / L3, kappa[3] / (L3 * L)};
}

std::optional<BigFloat> ModerateDeviation::log_lhs_upper() const {
  if (lhs_upper == 0) return std::nullopt;
  return log(lhs_upper);
}

std::optional<BigFloat> ModerateDeviation::log_lhs_lower() const {
  if (lhs_lower == 0) return std::nullopt;
  return log(lhs_lower);
}

std::optional<BigFloat> ModerateDeviation::ratio_upper() const {
  if (lhs_upper == 0) return std::nullopt;
  return BigFloat(lhs_upper / rhs_upper);
}

std::optional<BigFloat> ModerateDeviation::ratio_lower() const {
  if (lhs_lower == 0) return std::nullopt;
  return BigFloat(lhs_lower / rhs_lower);
}

ModerateDeviation moderate_deviation_profile(unsigned n, double x, const Backend& backend) {
  require_n(n);
  if (!(x > 0)) throw std::invalid_argument("moderate deviations need x > 0");
  BigFloatScope scope(working_digits(backend));
  const auto lat = normalized_lattice(n, backend);
  const auto h = harmonic_cache<BigFloat>(n);
  const BigFloat L = third_root_scale(h);
  ModerateDeviation md;
  md.n = n;
  md.x = x;
  md.t_n = lat.sigma * lat.sigma / (L * L);
  const BigFloat bx(x);
  md.threshold = sqrt(md.t_n) * bx;
  md.lhs_upper = 0;
  md.lhs_lower = 0;
  for (const auto& p : lat.points) {
    if (p.t >= md.threshold) md.lhs_upper += p.mass;
    if (p.t <= -md.threshold) md.lhs_lower += p.mass;
  }
  md.upper_beyond_support = md.threshold > lat.points.back().t;
  md.lower_beyond_support = -md.threshold < lat.points.front().t;
  const BigFloat gauss = exp(-md.t_n * bx * bx / 2) / (bx * sqrt(2 * pi() * md.t_n));
  const BigFloat cubic = exp(bx * bx * bx / 6);
  md.rhs_upper = gauss * cubic;
  md.rhs_lower = gauss / cubic;
  return md;
}

Rational jordan_measure(const Window& window) {
  Window w = window;
  for (const auto& [lo, hi] : w) {
    if (lo > hi) throw std::invalid_argument("window interval with lo > hi");
  }
  std::sort(w.begin(), w.end());
  Rational total(0);
  std::optional<std::pair<Rational, Rational>> run;
  for (const auto& iv : w) {
    if (run && iv.first <= run->second) {
      run->second = std::max(run->second, iv.second);
      continue;
    }
    if (run) total += run->second - run->first;
    run = iv;
  }
  if (run) total += run->second - run->first;
  return total;
}

LocalLimit local_limit_profile(unsigned n, double delta, double x, const Window& window, const Backend& backend) {
  require_n(n);
  if (!(delta > 0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  if (window.empty()) throw std::invalid_argument("empty window");
  const Rational measure = jordan_measure(window);
  BigFloatScope scope(working_digits(backend));
  const auto lat = normalized_lattice(n, backend);
  const BigFloat scale = pow(log(BigFloat(n)), BigFloat(delta));
  const BigFloat bx(x);
  std::vector<std::pair<BigFloat, BigFloat>> bounds;
  for (const auto& [lo, hi] : window) bounds.emplace_back(to_bigfloat(lo), to_bigfloat(hi));
  BigFloat prob(0);
  for (const auto& p : lat.points) {
    const BigFloat y = (p.t - bx) / scale;
    for (const auto& [lo, hi] : bounds) {
      if (y >= lo && y <= hi) {
        prob += p.mass;
        break;
      }
    }
  }
  LocalLimit out;
  out.scaled_prob = prob / scale;
  out.target_density_mass = exp(-bx * bx / 2) / sqrt(2 * pi()) * to_bigfloat(measure);
  return out;
}

}  // namespace cchain
