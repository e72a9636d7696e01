#include "cchain/montecarlo.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cchain {

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed + (chunk + 1) * 0x9E3779B97F4A7C15ULL);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Point reflect_into_triangle(double u, double v) {
  if (u + v > 1) return {1 - u, 1 - v};
  return {u, v};
}

Point sample_triangle_point(std::mt19937_64& rng) {
  const double u = uniform01(rng);
  const double v = uniform01(rng);
  return reflect_into_triangle(u, v);
}

int orientation(const Point& a, const Point& b, const Point& c) {
  // Shewchuk's orient2d stage A filter.
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  double detsum;
  if (detleft > 0) {
    if (detright <= 0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0) {
    if (detright >= 0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
  }
  constexpr double eps = 0x1.0p-53;
  const double errbound = (3.0 + 16.0 * eps) * eps * detsum;
  if (det >= errbound) return 1;
  if (-det >= errbound) return -1;
  const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  return sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

unsigned chain_vertex_count(std::vector<Point> points) {
  if (points.empty()) throw std::invalid_argument("chain_vertex_count needs at least one point");
  const std::size_t samples = points.size();
  // Anchors are marked by their index >= samples.
  std::vector<std::size_t> order(samples + 2);
  points.push_back({0, 1});
  points.push_back({1, 0});
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return points[i].x < points[j].x || (points[i].x == points[j].x && points[i].y < points[j].y);
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) {
                            return points[i].x == points[j].x && points[i].y == points[j].y;
                          }),
              order.end());

  // Andrew's monotone chain, strict turns only.
  std::vector<std::size_t> hull;
  auto build = [&](auto first, auto last) {
    const std::size_t base = hull.size();
    for (auto it = first; it != last; ++it) {
      while (hull.size() >= base + 2 &&
             orientation(points[hull[hull.size() - 2]], points[hull.back()], points[*it]) <= 0) {
        hull.pop_back();
      }
      hull.push_back(*it);
    }
    hull.pop_back();  // last point starts the other half
  };
  build(order.begin(), order.end());
  build(order.rbegin(), order.rend());

  unsigned count = 0;
  for (std::size_t i : hull) {
    if (i < samples) ++count;
  }
  return count;
}

double SimResult::empirical_mean() const {
  double s = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) s += static_cast<double>(k + 1) * static_cast<double>(counts[k]);
  return s / static_cast<double>(trials);
}

SimResult run_simulation(const SimConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("simulation needs n >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("simulation needs trials >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("simulation needs workers >= 1");
  const std::uint64_t chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;
  std::atomic<std::uint64_t> next{0};

  auto work = [&](std::vector<std::uint64_t>& hist) {
    std::vector<Point> pts(cfg.n);
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      std::mt19937_64 rng(chunk_seed(cfg.seed, c));
      const std::uint64_t begin = c * kChunkTrials;
      const std::uint64_t end = std::min(cfg.trials, begin + kChunkTrials);
      for (std::uint64_t t = begin; t < end; ++t) {
        for (auto& p : pts) p = sample_triangle_point(rng);
        ++hist[chain_vertex_count(pts) - 1];
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, chunks));
  std::vector<std::vector<std::uint64_t>> hists(workers, std::vector<std::uint64_t>(cfg.n, 0));
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work, std::ref(hists[w]));
  work(hists[0]);
  for (auto& t : threads) t.join();

  SimResult r;
  r.n = cfg.n;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  r.counts.assign(cfg.n, 0);
  for (const auto& h : hists) {
    for (unsigned k = 0; k < cfg.n; ++k) r.counts[k] += h[k];
  }
  for (auto c : r.counts) r.empirical_pmf.push_back(static_cast<double>(c) / static_cast<double>(cfg.trials));
  return r;
}

namespace {

EmpiricalComparison compare(const SimResult& result, const std::vector<double>& p) {
  if (p.size() != result.n || result.counts.size() != result.n) {
    throw std::invalid_argument("simulated n and exact n differ");
  }
  EmpiricalComparison out;
  const double trials = static_cast<double>(result.trials);
  for (unsigned k = 0; k < result.n; ++k) {
    out.max_abs_dev = std::max(out.max_abs_dev, std::abs(result.empirical_pmf[k] - p[k]));
  }
  // Pool adjacent cells until the expected count reaches 5; a short tail is
  // merged into the last full cell.
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double obs = 0, exp = 0;
  for (unsigned k = 0; k < result.n; ++k) {
    obs += static_cast<double>(result.counts[k]);
    exp += trials * p[k];
    if (exp >= 5) {
      cells.emplace_back(obs, exp);
      obs = exp = 0;
    }
  }
  if (exp > 0 || obs > 0) {
    if (cells.empty()) {
      cells.emplace_back(obs, exp);
    } else {
      cells.back().first += obs;
      cells.back().second += exp;
    }
  }
  for (const auto& [o, e] : cells) {
    if (e > 0) out.chi_square += (o - e) * (o - e) / e;
  }
  out.dof = cells.size() > 1 ? static_cast<unsigned>(cells.size() - 1) : 0;
  if (out.dof > 0) {
    out.chi_square_quantile = boost::math::quantile(boost::math::chi_squared(out.dof), 0.999);
    out.chi_square_ok = out.chi_square < out.chi_square_quantile;
  }
  return out;
}

}  // namespace

EmpiricalComparison compare_empirical(const SimResult& result, const VertexPmf<Rational>& exact) {
  std::vector<double> p;
  for (const auto& x : exact.probs) p.push_back(to_double(x));
  return compare(result, p);
}

EmpiricalComparison compare_empirical(const SimResult& result, const VertexPmf<double>& exact) {
  return compare(result, exact.probs);
}

}  // namespace cchain
