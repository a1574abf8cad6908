#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ellpot/geometry.hpp"

namespace ellpot {

/// Monte Carlo estimate of the defining volume integral.
struct OracleEstimate {
  double value = 0.0;
  /// Sample standard deviation of the scaled kernel over sqrt(samples).
  double std_error = 0.0;
  /// Accepted (inside-the-body) samples.
  long samples = 0;
  std::uint64_t seed = 0;
};

struct MonteCarloOptions {
  /// Independent sample streams; each is seeded from (seed, shard index), so
  /// the estimate depends on the shard count but not on the thread count.
  int shards = 8;
  int threads = 1;
};

/// Samples below this distance from x are dropped from the estimator and
/// replaced by the exact contribution of the excluded ball, relative to max a_i.
inline constexpr double kSingularExclusion = 1e-6;

/// c_N * int_{|r| < h} |r|^{2-N} dr = h^2 / (2 (N - 2)).
double excluded_ball_contribution(int dimension, double radius);

/// Estimate c_N int_Omega |x - y|^{2-N} dy by rejection sampling from the
/// bounding box, averaging the kernel over accepted samples and scaling by
/// the volume. Uses std::mt19937_64 streams. Throws TooFewSamples below 1000.
OracleEstimate mc_potential(const Ellipsoid& e, std::span<const double> x, long samples,
                            std::uint64_t seed, const MonteCarloOptions& options = {});

using ScalarField = std::function<double(std::span<const double>)>;

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x, double h);

/// 2N+1 point stencil sum_i (f(x + h e_i) - 2 f(x) + f(x - h e_i)) / h^2.
double fd_laplacian(const ScalarField& f, std::span<const double> x, double h);

}  // namespace ellpot
