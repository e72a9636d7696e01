#pragma once

// Geometric Monte Carlo oracle: uniform points in the triangle with vertices
// (0,0), (0,1), (1,0), the convex hull with the anchors (0,1) and (1,0), and
// the number of sample points among its vertices.
//
// Random streams: trials are cut into chunks of kChunkTrials. Chunk c draws
// from std::mt19937_64 seeded with chunk_seed(seed, c), so the histogram
// depends on (n, trials, seed) only and never on the number of workers.

#include "cchain/exact_core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace cchain {

struct Point {
  double x = 0;
  double y = 0;
};

inline constexpr std::uint64_t kChunkTrials = 8192;

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// splitmix64(seed + (c + 1) * 0x9E3779B97F4A7C15).
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

/// Top 53 bits of one engine output, uniform on [0, 1).
double uniform01(std::mt19937_64& rng);

/// (u, v) if u + v <= 1, else (1 - u, 1 - v).
Point reflect_into_triangle(double u, double v);

Point sample_triangle_point(std::mt19937_64& rng);

/// Sign of the orientation determinant of (a, b, c), exact for any doubles:
/// a floating-point filter with a rational fallback.
int orientation(const Point& a, const Point& b, const Point& c);

/// Number of the given points that are vertices of conv(points, (0,1), (1,0)).
/// Collinear middle points are not vertices.
unsigned chain_vertex_count(std::vector<Point> points);

struct SimConfig {
  unsigned n = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct SimResult {
  unsigned n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // counts[k - 1], k = 1..n
  std::vector<double> empirical_pmf;
  std::optional<double> max_abs_dev;

  double empirical_mean() const;
};

SimResult run_simulation(const SimConfig& cfg);

struct EmpiricalComparison {
  double max_abs_dev = 0;
  double chi_square = 0;
  unsigned dof = 0;
  double chi_square_quantile = 0;  // 99.9% point of chi-square(dof)
  bool chi_square_ok = true;
};

/// Max per-entry deviation and Pearson chi-square, adjacent cells pooled
/// until each expected count is at least 5.
EmpiricalComparison compare_empirical(const SimResult& result, const VertexPmf<Rational>& exact);
EmpiricalComparison compare_empirical(const SimResult& result, const VertexPmf<double>& exact);

}  // namespace cchain
