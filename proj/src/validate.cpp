#include <algorithm>
#include <cmath>
#include <random>

#include "ellpot/cli.hpp"
#include "ellpot/demag.hpp"
#include "ellpot/oracle.hpp"
#include "ellpot/potential.hpp"

namespace ellpot::cli {

namespace {

// Finite-difference checks divide quadrature noise by h^2, so they run tighter.
constexpr QuadratureConfig kTight{1e-13, 1e-15, 400};
constexpr double kStep = 1e-3;

class PointSampler {
 public:
  PointSampler(const Ellipsoid& e, std::uint64_t seed) : e_(e), rng_(seed) {}

  /// a o u with u uniform on the unit sphere, scaled by `radius`.
  Point on_level(double radius) {
    std::normal_distribution<double> normal;
    Point u(e_.dimension());
    double norm = 0;
    do {
      norm = 0;
      for (double& c : u) {
        c = normal(rng_);
        norm += c * c;
      }
    } while (norm == 0);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = radius * e_.axis(i) * u[i] / norm;
    return u;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  const Ellipsoid& e_;
  std::mt19937_64 rng_;
};

ValidationCheck make_check(std::string name, double tolerance) {
  ValidationCheck c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  return c;
}

void record(ValidationCheck& c, double error) {
  ++c.cases;
  if (!std::isfinite(error)) error = std::numeric_limits<double>::infinity();
  c.max_error = std::max(c.max_error, error);
}

void finish(ValidationCheck& c) { c.passed = c.cases > 0 && c.max_error <= c.tolerance; }

}  // namespace

std::vector<ValidationCheck> run_validation(const Ellipsoid& e, std::uint64_t seed,
                                            const QuadratureConfig& cfg) {
  std::vector<ValidationCheck> checks;
  PointSampler sampler(e, seed);
  const std::size_t n = e.dimension();
  auto potential = [&](std::span<const double> x) { return potential_at(e, x, kTight).value; };

  {
    auto c = make_check("tau_residual", kTauTolerance);
    for (int k = 0; k < 20; ++k) {
      const Point x = sampler.on_level(sampler.uniform(1.01, 10.0));
      record(c, std::abs(level_value(e, x, solve_tau(e, x)) - 1));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("poisson_interior", 1e-4);
    for (int k = 0; k < 10; ++k) {
      const Point x = sampler.on_level(sampler.uniform(0.0, 0.8));
      record(c, std::abs(fd_laplacian(potential, x, kStep) + 1));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("poisson_exterior", 1e-4);
    for (int k = 0; k < 10; ++k) {
      const Point x = sampler.on_level(sampler.uniform(1.3, 3.0));
      record(c, std::abs(fd_laplacian(potential, x, kStep)));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("boundary_continuity", 1e-8);
    constexpr double offset = 1e-10;
    for (int k = 0; k < 10; ++k) {
      const Point b = sampler.on_level(1.0);
      Point inner(b), outer(b);
      for (std::size_t i = 0; i < n; ++i) {
        inner[i] *= 1 - offset;
        outer[i] *= 1 + offset;
      }
      const double vin = potential_at(e, inner, cfg, 1e-15).value;
      const double vout = potential_at(e, outer, cfg, 1e-15).value;
      record(c, std::abs(vin - vout));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("gradient_consistency", 1e-6);
    for (int k = 0; k < 6; ++k) {
      const Point x = sampler.on_level(k % 2 == 0 ? sampler.uniform(0.1, 0.8) : sampler.uniform(1.3, 3.0));
      const auto exact = field_at(e, x, kTight).gradient;
      const auto fd = fd_gradient(potential, x, 1e-4);
      for (std::size_t i = 0; i < n; ++i) record(c, std::abs(exact[i] - fd[i]));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("potential_scaling", 1e-9);
    for (int k = 0; k < 5; ++k) {
      const double lambda = sampler.uniform(0.5, 3.0);
      Point x = sampler.on_level(sampler.uniform(0.0, 3.0));
      const double base = potential_at(e, x, cfg).value;
      for (double& xi : x) xi *= lambda;
      const double scaled = potential_at(e.scaled(lambda), x, cfg).value;
      record(c, std::abs(scaled - lambda * lambda * base) / (lambda * lambda * base));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    // Reported as a multiple of the standard error.
    auto c = make_check("monte_carlo", 4.0);
    for (int k = 0; k < 3; ++k) {
      const Point x = sampler.on_level(sampler.uniform(1.2, 3.0));
      const OracleEstimate mc = mc_potential(e, x, 200000, seed + 1000 + static_cast<std::uint64_t>(k));
      record(c, std::abs(mc.value - potential_at(e, x, cfg).value) / mc.std_error);
    }
    finish(c);
    checks.push_back(c);
  }

  if (n != 3) return checks;

  const DemagIntegral demag = demag_factors_integral(e, cfg);
  const auto& p = demag.tensor.factors;
  {
    auto c = make_check("demag_trace", 1e-9);
    record(c, std::abs(demag.tensor.trace() - 1));
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("demag_ordering", 0.0);
    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](auto l, auto r) { return e.axis(l) > e.axis(r); });
    for (std::size_t k = 0; k + 1 < 3; ++k) {
      const bool tie = e.axis(order[k]) == e.axis(order[k + 1]);
      record(c, tie ? 0.0 : std::max(0.0, p[order[k]] - p[order[k + 1]]));
    }
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("demag_scale_invariance", 1e-10);
    const double lambda = sampler.uniform(0.2, 5.0);
    const auto scaled = demag_factors_integral(e.scaled(lambda), cfg).tensor.factors;
    for (std::size_t i = 0; i < 3; ++i) record(c, std::abs(scaled[i] - p[i]));
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("closed_form_vs_integral", 1e-9);
    const auto closed = demag_closed_form(e).factors;
    for (std::size_t i = 0; i < 3; ++i) record(c, std::abs(closed[i] - p[i]));
    finish(c);
    checks.push_back(c);
  }
  {
    auto c = make_check("interior_field_uniform", 1e-8);
    for (int k = 0; k < 10; ++k) {
      const Point x = sampler.on_level(sampler.uniform(0.0, 0.99));
      const auto g = field_at(e, x, cfg).gradient;
      for (std::size_t i = 0; i < 3; ++i) record(c, std::abs(g[i] + p[i] * x[i]));
    }
    finish(c);
    checks.push_back(c);
  }
  return checks;
}

}  // namespace ellpot::cli
