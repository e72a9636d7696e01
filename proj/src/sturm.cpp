#include "cchain/sturm.hpp"

#include <stdexcept>

namespace cchain {

void trim(IntPoly& p) {
  while (!p.empty() && sign(p.back()) == 0) p.pop_back();
}

IntPoly primitive_part(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g(0);
  for (const auto& c : p) {
    if (sign(c) != 0) g = g == 0 ? Integer(abs(c)) : Integer(gcd(g, c));
    if (g == 1) return p;
  }
  for (auto& c : p) c /= g;
  return p;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

IntPoly clear_denominators(const std::vector<Rational>& p) {
  Integer l(1);
  for (const auto& c : p) l = lcm(l, denominator(c));
  IntPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(numerator(c) * (l / denominator(c)));
  trim(out);
  return out;
}

namespace {

// Sign of q^d p(num/q) for d = deg p, using precomputed powers of q.
int homogeneous_sign(const IntPoly& p, const Integer& num, const std::vector<Integer>& qpow) {
  if (p.empty()) return 0;
  const std::size_t d = p.size() - 1;
  Integer v = p[d];
  for (std::size_t j = d; j-- > 0;) {
    v *= num;
    v += p[j] * qpow[d - j];
  }
  return sign(v);
}

std::vector<Integer> powers(const Integer& q, std::size_t upto) {
  std::vector<Integer> out(upto + 1);
  out[0] = 1;
  for (std::size_t i = 1; i <= upto; ++i) out[i] = out[i - 1] * q;
  return out;
}

int count_variations(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Remainder of a modulo b, scaled by a positive integer.
IntPoly positive_pseudo_remainder(IntPoly a, IntPoly b) {
  if (sign(b.back()) < 0) {
    for (auto& c : b) c = -c;
  }
  const Integer& lb = b.back();
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const Integer la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

int sign_at(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  return homogeneous_sign(p, numerator(x), powers(denominator(x), p.size() - 1));
}

SturmChain::SturmChain(IntPoly p) {
  p = primitive_part(std::move(p));
  if (p.empty()) throw std::invalid_argument("Sturm chain of the zero polynomial");
  max_degree_ = p.size() - 1;
  chain_.push_back(p);
  IntPoly d = primitive_part(derivative(p));
  if (d.empty()) return;
  chain_.push_back(d);
  while (chain_.back().size() > 1) {
    IntPoly r = positive_pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain_.push_back(primitive_part(std::move(r)));
  }
}

int SturmChain::variations_at(const Rational& x) const {
  const auto qpow = powers(denominator(x), max_degree_);
  const Integer num = numerator(x);
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& p : chain_) signs.push_back(homogeneous_sign(p, num, qpow));
  return count_variations(signs);
}

int SturmChain::variations_at_neg_infinity() const {
  std::vector<int> signs;
  for (const auto& p : chain_) {
    const int s = sign(p.back());
    signs.push_back((p.size() - 1) % 2 == 0 ? s : -s);
  }
  return count_variations(signs);
}

int SturmChain::variations_at_pos_infinity() const {
  std::vector<int> signs;
  for (const auto& p : chain_) signs.push_back(sign(p.back()));
  return count_variations(signs);
}

int SturmChain::count_in(const Rational& lo, const Rational& hi) const {
  if (!(lo < hi)) throw std::invalid_argument("Sturm count needs lo < hi");
  return variations_at(lo) - variations_at(hi);
}

int sturm_count(const PolySeq<Rational>& poly, const Rational& lo, const Rational& hi) {
  IntPoly p = clear_denominators(poly.coeffs);
  if (p.empty()) throw std::invalid_argument("Sturm count of the zero polynomial");
  return SturmChain(std::move(p)).count_in(lo, hi);
}

int sturm_count(const PolySeq<Integer>& poly, const Rational& lo, const Rational& hi) {
  IntPoly p = poly.coeffs;
  trim(p);
  if (p.empty()) throw std::invalid_argument("Sturm count of the zero polynomial");
  return SturmChain(std::move(p)).count_in(lo, hi);
}

Rational cauchy_bound(const IntPoly& p) {
  if (p.empty()) throw std::invalid_argument("Cauchy bound of the zero polynomial");
  const Integer lead = abs(p.back());
  Integer top(0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (abs(p[i]) > top) top = abs(p[i]);
  }
  return Rational(1) + Rational(top, lead);
}

}  // namespace cchain
