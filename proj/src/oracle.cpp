#include "ellpot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "ellpot/potential.hpp"

namespace ellpot {

namespace {

struct RunningMoments {
  long count = 0;
  double mean = 0;
  double m2 = 0;

  void add(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }

  void merge(const RunningMoments& other) {
    if (other.count == 0) return;
    const double n1 = static_cast<double>(count), n2 = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double n = n1 + n2;
    mean += delta * n2 / n;
    m2 += other.m2 + delta * delta * n1 * n2 / n;
    count += other.count;
  }
};

RunningMoments sample_shard(const Ellipsoid& e, std::span<const double> x, long samples,
                            std::uint64_t seed, int shard, double exclusion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const auto axes = e.semi_axes();
  const std::size_t n = axes.size();
  const double cn = kernel_constant(static_cast<int>(n));
  const double power = 2.0 - static_cast<double>(n);
  std::vector<double> y(n);

  RunningMoments moments;
  while (moments.count < samples) {
    double level = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = unit(rng);
      y[i] = u * axes[i];
      level += u * u;
    }
    if (level > 1) continue;
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) r2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double r = std::sqrt(r2);
    moments.add(r < exclusion ? 0.0 : cn * std::pow(r, power));
  }
  return moments;
}

}  // namespace

double excluded_ball_contribution(int dimension, double radius) {
  return radius * radius / (2.0 * (dimension - 2));
}

OracleEstimate mc_potential(const Ellipsoid& e, std::span<const double> x, long samples,
                            std::uint64_t seed, const MonteCarloOptions& options) {
  check_dimension(e, x);
  if (samples < 1000) throw Error(ErrorCode::TooFewSamples, "Monte Carlo oracle needs >= 1000 samples");
  const int shards = std::max(1, options.shards);
  const int threads = std::clamp(options.threads, 1, shards);
  const auto axes = e.semi_axes();
  const double exclusion = kSingularExclusion * *std::max_element(axes.begin(), axes.end());

  std::vector<RunningMoments> parts(static_cast<std::size_t>(shards));
  auto work = [&](int first) {
    for (int s = first; s < shards; s += threads) {
      const long count = samples / shards + (s < samples % shards ? 1 : 0);
      parts[static_cast<std::size_t>(s)] = sample_shard(e, x, count, seed, s, exclusion);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  RunningMoments total;
  for (const RunningMoments& m : parts) total.merge(m);

  const double vol = volume(e);
  OracleEstimate out;
  out.samples = total.count;
  out.seed = seed;
  out.value = vol * total.mean;
  out.std_error = vol * std::sqrt(total.m2 / static_cast<double>(total.count - 1)) /
                  std::sqrt(static_cast<double>(total.count));
  if (level_value(e, x, 0) < 1)
    out.value += excluded_ball_contribution(static_cast<int>(e.dimension()), exclusion);
  return out;
}

std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x, double h) {
  std::vector<double> p(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    p[i] = x[i];
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

double fd_laplacian(const ScalarField& f, std::span<const double> x, double h) {
  std::vector<double> p(x.begin(), x.end());
  const double centre = f(x);
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    p[i] = x[i];
    sum += (fp - 2 * centre + fm) / (h * h);
  }
  return sum;
}

}  // namespace ellpot
