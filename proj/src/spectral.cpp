#include "cchain/spectral.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace cchain {

namespace {

std::string describe(const RootEnclosure& e) {
  return "[" + to_fraction_string(e.lo) + ", " + to_fraction_string(e.hi) + "]";
}

// Smallest power of two >= x (x > 0).
Rational power_of_two_above(const Rational& x) {
  long e = 0;
  while (pow2(e) < x) ++e;
  return pow2(e);
}

}  // namespace

RecurrenceChain::RecurrenceChain(unsigned n) : n_(n) {
  if (n == 0) throw std::invalid_argument("root isolation needs n >= 1");
}

// Signs of q^{m-1} K_m(p/q) for m = n..1, via
//   K~_m = (p + beta_m q) K~_{m-1} - gamma_m q^2 K~_{m-2},  K~_1 = 1, K~_0 = 0.
std::vector<int> RecurrenceChain::signs_at(const Rational& x) const {
  const Integer p = numerator(x), q = denominator(x);
  const Integer q2 = q * q;
  std::vector<int> signs(n_);
  Integer prev(0), cur(1);
  signs[n_ - 1] = 1;
  for (unsigned m = 2; m <= n_; ++m) {
    const auto mm = static_cast<long long>(m);
    const Integer beta(mm * (mm - 1));
    const Integer gamma(mm * (mm - 1) * (mm - 1) * (mm - 2) / 4);
    Integer next = (p + beta * q) * cur - gamma * q2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
    signs[n_ - m] = sign(cur);
  }
  return signs;
}

int RecurrenceChain::variations_at(const Rational& x) const {
  int changes = 0, last = 0;
  for (int s : signs_at(x)) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int RecurrenceChain::pgf_sign(const Rational& x) const { return sign(x) * signs_at(x).front(); }

int RecurrenceChain::reduced_sign(const Rational& x) const { return signs_at(x).front(); }

int RecurrenceChain::count_in(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

RootEnclosureSet isolate_roots(unsigned n) {
  RecurrenceChain chain(n);
  RootEnclosureSet set;
  set.n = n;
  set.enclosures.push_back({Rational(0), Rational(0)});
  if (n == 1) {
    certify_enclosures(set);
    return set;
  }

  const auto h = monic_poly(n);
  const Rational bound = power_of_two_above(cauchy_bound(h.coeffs));

  // K_n has n-1 roots in (-bound, 0); shrink the left end over powers of two.
  const int total = static_cast<int>(n) - 1;
  if (chain.count_in(-bound, Rational(0)) != total) {
    throw CertificationError("G_" + std::to_string(n) + ": recurrence chain does not find " + std::to_string(total) +
                             " nonzero roots in (" + to_fraction_string(-bound) + ", 0]");
  }
  long lo_exp = 0, hi_exp = 0;
  while (pow2(hi_exp) < bound) ++hi_exp;
  if (chain.count_in(Rational(-1), Rational(0)) == total) hi_exp = 0;
  while (hi_exp - lo_exp > 1) {
    const long mid_exp = (lo_exp + hi_exp) / 2;
    (chain.count_in(-pow2(mid_exp), Rational(0)) == total ? hi_exp : lo_exp) = mid_exp;
  }
  const Rational left = -pow2(hi_exp);

  // Nearby point on the given side of an exact root with no other root of
  // K_n between the two.
  auto step_away = [&](const Rational& root, const Rational& limit) {
    Rational delta = (limit - root) / 4;
    for (;;) {
      const Rational probe = root + delta;
      const bool clean = delta < 0 ? chain.count_in(probe, root) == 1 : chain.count_in(root, probe) == 0;
      if (clean && chain.reduced_sign(probe) != 0) return probe;
      delta /= 2;
    }
  };

  std::vector<RootEnclosure> found;
  // count = number of roots in (lo, hi]; lo and hi are never roots.
  std::function<void(const Rational&, const Rational&, int)> split = [&](const Rational& lo, const Rational& hi,
                                                                          int count) {
    if (count == 0) return;
    if (count == 1) {
      found.push_back({lo, hi});
      return;
    }
    const Rational mid = (lo + hi) / 2;
    const int left_count = chain.count_in(lo, mid);
    if (chain.reduced_sign(mid) == 0) {
      found.push_back({mid, mid});
      split(lo, step_away(mid, lo), left_count - 1);
      split(step_away(mid, hi), hi, count - left_count);
    } else {
      split(lo, mid, left_count);
      split(mid, hi, count - left_count);
    }
  };
  split(left, Rational(0), total);

  found.push_back({Rational(0), Rational(0)});
  std::sort(found.begin(), found.end(),
            [](const RootEnclosure& a, const RootEnclosure& b) { return a.midpoint() > b.midpoint(); });

  // Adjacent enclosures may share an endpoint; shrink them apart.
  for (std::size_t i = 0; i + 1 < found.size(); ++i) {
    auto& upper = found[i];
    auto& lower = found[i + 1];
    while (!lower.exact() && lower.hi >= upper.lo) {
      const Rational mid = lower.midpoint();
      const int s = chain.reduced_sign(mid);
      if (s == 0) {
        lower = {mid, mid};
      } else if (s == chain.reduced_sign(lower.hi)) {
        lower.hi = mid;
      } else {
        lower.lo = mid;
      }
    }
    while (!upper.exact() && upper.lo <= lower.hi) {
      const Rational mid = upper.midpoint();
      const int s = chain.reduced_sign(mid);
      if (s == 0) {
        upper = {mid, mid};
      } else if (s == chain.reduced_sign(upper.hi)) {
        upper.hi = mid;
      } else {
        upper.lo = mid;
      }
    }
  }

  set.enclosures = std::move(found);
  certify_enclosures(set);
  return set;
}

void certify_enclosures(const RootEnclosureSet& set) {
  const unsigned n = set.n;
  const std::string tag = "G_" + std::to_string(n) + ": ";
  if (set.enclosures.size() != n) {
    throw CertificationError(tag + "expected " + std::to_string(n) + " enclosures, got " +
                             std::to_string(set.enclosures.size()));
  }
  const auto& first = set.enclosures.front();
  if (!(first.exact() && sign(first.lo) == 0)) {
    throw CertificationError(tag + "first enclosure must be [0, 0], got " + describe(first));
  }

  const IntPoly h = monic_poly(n).coeffs;
  const SturmChain chain(h);
  const Rational bound = cauchy_bound(h);
  const int total = chain.count_in(-bound, Rational(0));
  if (total != static_cast<int>(n)) {
    throw CertificationError(tag + "Sturm count in (" + to_fraction_string(-bound) + ", 0] is " +
                             std::to_string(total) + ", expected " + std::to_string(n));
  }

  for (std::size_t i = 0; i < set.enclosures.size(); ++i) {
    const auto& e = set.enclosures[i];
    if (e.lo > e.hi || sign(e.hi) > 0) throw CertificationError(tag + "malformed enclosure " + describe(e));
    if (i > 0 && !(e.hi < set.enclosures[i - 1].lo)) {
      throw CertificationError(tag + "enclosures " + describe(set.enclosures[i - 1]) + " and " + describe(e) +
                               " are not disjoint");
    }
    if (e.exact()) {
      if (sign_at(h, e.lo) != 0) throw CertificationError(tag + describe(e) + " is not a root");
    } else {
      if (sign_at(h, e.lo) == 0 || sign_at(h, e.hi) == 0) {
        throw CertificationError(tag + "enclosure " + describe(e) + " has a root at an endpoint");
      }
      if (const int c = chain.count_in(e.lo, e.hi); c != 1) {
        throw CertificationError(tag + "enclosure " + describe(e) + " holds " + std::to_string(c) + " roots");
      }
    }
  }
}

RootEnclosureSet refine_roots(const RootEnclosureSet& set, const Rational& target_width) {
  if (sign(target_width) <= 0) throw std::invalid_argument("target width must be positive");
  if (set.n == 0) return set;
  RecurrenceChain chain(set.n);
  RootEnclosureSet out = set;
  for (auto& e : out.enclosures) {
    if (e.exact()) continue;
    const int hi_sign = chain.reduced_sign(e.hi);
    while (e.width() > target_width) {
      const Rational mid = e.midpoint();
      const int s = chain.reduced_sign(mid);
      if (s == 0) {
        e = {mid, mid};
        break;
      }
      if (s == hi_sign) {
        e.hi = mid;
      } else {
        e.lo = mid;
      }
    }
  }
  return out;
}

bool roots_interlace(unsigned n) {
  if (n < 3) return true;  // K_2 = z + 2 against K_1 = 1: nothing to interlace
  RootEnclosureSet roots = isolate_roots(n);
  RecurrenceChain inner(n - 1);
  // Shrink every enclosure of K_n until it holds no root of K_{n-1}.
  for (std::size_t i = 1; i < roots.enclosures.size(); ++i) {
    auto& e = roots.enclosures[i];
    while (!e.exact() && inner.count_in(e.lo, e.hi) + (inner.reduced_sign(e.lo) == 0 ? 1 : 0) != 0) {
      e = refine_roots(RootEnclosureSet{n, {e}}, e.width() / 2).enclosures.front();
    }
    if (e.exact() && inner.reduced_sign(e.lo) == 0) return false;
  }
  // One root of K_{n-1} in each gap between consecutive roots of K_n, none outside.
  const auto& enc = roots.enclosures;
  for (std::size_t i = 1; i + 1 < enc.size(); ++i) {
    if (inner.count_in(enc[i + 1].hi, enc[i].lo) != 1) return false;
  }
  return inner.count_in(enc.back().lo, enc[1].hi) == static_cast<int>(n) - 2;
}

BernoulliFactorization bernoulli_factorization(unsigned n, const Rational& target_width) {
  const auto roots = refine_roots(isolate_roots(n), target_width);
  BernoulliFactorization f;
  f.n = n;
  for (const auto& e : roots.enclosures) {
    // q(r) = 1 / (1 - r) is increasing on (-inf, 0].
    const Rational q_lo = Rational(1) / (Rational(1) - e.lo);
    const Rational q_hi = Rational(1) / (Rational(1) - e.hi);
    f.success_probs.push_back((q_lo + q_hi) / 2);
    f.error_radii.push_back((q_hi - q_lo) / 2);
  }
  return f;
}

template <class T>
VertexPmf<T> reconstruct_pmf(const BernoulliFactorization& f) {
  static_assert(!is_exact_v<T>, "reconstruction runs in floating point");
  std::vector<T> law{from_int<T>(1)};
  for (const auto& q_exact : f.success_probs) {
    const T q = from_rational<T>(q_exact);
    const T p = from_int<T>(1) - q;
    std::vector<T> next(law.size() + 1, from_int<T>(0));
    for (std::size_t i = 0; i < law.size(); ++i) {
      next[i] += p * law[i];
      next[i + 1] += q * law[i];
    }
    law = std::move(next);
  }
  VertexPmf<T> pmf;
  pmf.n = f.n;
  pmf.probs.assign(law.begin() + 1, law.end());
  pmf.backend = backend_of<T>();
  return pmf;
}

template VertexPmf<double> reconstruct_pmf<double>(const BernoulliFactorization&);
template VertexPmf<BigFloat> reconstruct_pmf<BigFloat>(const BernoulliFactorization&);

}  // namespace cchain
