// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellpot/cli.hpp"
#include "ellpot/demag.hpp"
#include "ellpot/elliptic.hpp"
#include "ellpot/oracle.hpp"
#include "ellpot/potential.hpp"

using namespace ellpot;
using P = std::vector<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::mt19937_64 rng(20261016);

Ellipsoid random_log_ellipsoid() {
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
  return Ellipsoid({std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
}

/// Point a o (r * unit direction).
P on_level(const Ellipsoid& e, double r) {
  std::normal_distribution<double> normal;
  P x(e.dimension());
  double n = 0;
  for (double& c : x) {
    c = normal(rng);
    n += c * c;
  }
  n = std::sqrt(n);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = r * e.axis(i) * x[i] / n;
  return x;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::vector<Ellipsoid> hundred_ellipsoids() {
  std::vector<Ellipsoid> out;
  for (int k = 0; k < 100; ++k) out.push_back(random_log_ellipsoid());
  return out;
}

const std::vector<Ellipsoid>& random_set() {
  static const std::vector<Ellipsoid> set = hundred_ellipsoids();
  return set;
}

Verdict sphere_factors() {
  const auto start = Clock::now();
  const auto d = demag_factors_integral(Ellipsoid({1, 1, 1}));
  const double elapsed = seconds_since(start);
  double err = 0;
  for (double p : d.tensor.factors) err = std::max(err, std::abs(p - 1.0 / 3));
  return {err < 1e-10 && elapsed < 0.010, fmt("max|P_i-1/3|=%.2e (tol 1e-10), %.2f ms (limit 10 ms)", err, elapsed * 1e3)};
}

Verdict trace_identity() {
  double worst = 0;
  for (const auto& e : random_set()) worst = std::max(worst, std::abs(demag_factors_integral(e).tensor.trace() - 1));
  return {worst < 1e-9, fmt("max|trP-1|=%.2e over 100 ellipsoids (tol 1e-9)", worst)};
}

Verdict ordering() {
  int bad = 0;
  for (const auto& e : random_set()) {
    const auto f = demag_factors_integral(e).tensor.factors;
    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](auto l, auto r) { return e.axis(l) > e.axis(r); });
    if (!(f[order[0]] <= f[order[1]] && f[order[1]] <= f[order[2]])) ++bad;
  }
  return {bad == 0, fmt("%d of 100 ellipsoids out of order", bad)};
}

Verdict sphere_potential() {
  const Ellipsoid sphere({1, 1, 1});
  const double centre = potential_at(sphere, P{0, 0, 0}).value;
  const double outside = potential_at(sphere, P{0, 2, 0}).value;
  const double gm = gravitational_potential(sphere, GravityConfig{1.0, TotalMass{1.0}}, P{0, 2, 0}).value;
  const double e1 = std::abs(centre - 0.5), e2 = std::abs(outside - 1.0 / 6), e3 = std::abs(gm - 0.5);
  return {e1 < 1e-10 && e2 < 1e-10 && e3 < 1e-10,
          fmt("|N(0)-1/2|=%.2e |N(2)-1/6|=%.2e |u-GM/r|=%.2e (tol 1e-10)", e1, e2, e3)};
}

Verdict tau_correctness() {
  const Ellipsoid sphere({1, 1, 1});
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const P x = on_level(sphere, uniform(1.001, 10.0));
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    worst = std::max(worst, std::abs(solve_tau(sphere, x) - (r2 - 1)));
  }
  return {worst < 1e-10, fmt("max|tau-(|x|^2-1)|=%.2e over 50 points (tol 1e-10)", worst)};
}

Verdict poisson() {
  const Ellipsoid e({3, 2, 1});
  auto f = [&](std::span<const double> x) { return potential_at(e, x).value; };
  double inside = 0, outside = 0;
  for (int k = 0; k < 20; ++k) {
    // h = 1e-3 stays clear of the surface.
    inside = std::max(inside, std::abs(fd_laplacian(f, on_level(e, uniform(0.0, 0.95)), 1e-3) + 1));
    outside = std::max(outside, std::abs(fd_laplacian(f, on_level(e, uniform(1.05, 4.0)), 1e-3)));
  }
  return {inside < 1e-4 && outside < 1e-4,
          fmt("interior max|Lap+1|=%.2e, exterior max|Lap|=%.2e (tol 1e-4, h=1e-3)", inside, outside)};
}

Verdict continuity() {
  const Ellipsoid e({3, 2, 1});
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    const P b = on_level(e, 1.0);
    P in(b), out(b);
    for (std::size_t i = 0; i < 3; ++i) {
      in[i] *= 1 - 1e-11;
      out[i] *= 1 + 1e-11;
    }
    const auto vin = potential_at(e, in, {}, 1e-15);
    const auto vout = potential_at(e, out, {}, 1e-15);
    if (vin.point_class.kind != PointKind::Interior || vout.point_class.kind != PointKind::Exterior)
      return {false, "ray endpoints not classified on opposite sides"};
    worst = std::max(worst, std::abs(vin.value - vout.value));
  }
  return {worst < 1e-8, fmt("max interior/exterior gap %.2e over 10 rays (tol 1e-8)", worst)};
}

Verdict uniform_field() {
  const Ellipsoid e({3, 2, 1});
  const auto p = demag_factors_integral(e).tensor.factors;
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const P x = on_level(e, uniform(0.0, 0.999));
    const auto g = field_at(e, x).gradient;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(g[i] + p[i] * x[i]));
  }
  return {worst < 1e-8, fmt("max|grad N + P x|=%.2e over 20 points (tol 1e-8)", worst)};
}

Verdict shell_theorem() {
  const Ellipsoid sphere({1, 1, 1});
  double lo = INFINITY, hi = -INFINITY, field = 0;
  for (int k = 0; k < 20; ++k) {
    const P x = on_level(sphere, uniform(0.0, 1 - 1e-3));
    const double v = hollow_shell_potential(sphere, 2.0, x).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    const auto g = hollow_shell_field(sphere, 2.0, x);
    field = std::max(field, std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]));
  }
  return {hi - lo < 1e-9 && field < 1e-9,
          fmt("potential spread %.2e, max |field| %.2e (tol 1e-9), value %.12f", hi - lo, field, lo)};
}

Verdict monte_carlo() {
  const auto start = Clock::now();
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    const Ellipsoid e({uniform(0.3, 3), uniform(0.3, 3), uniform(0.3, 3)});
    const P x = on_level(e, uniform(1.1, 3.0));
    const auto mc = mc_potential(e, x, 1000000, 1000 + static_cast<std::uint64_t>(k));
    worst = std::max(worst, std::abs(mc.value - potential_at(e, x).value) / mc.std_error);
  }
  const double elapsed = seconds_since(start);
  return {worst < 4 && elapsed < 30,
          fmt("max deviation %.2f sigma (limit 4), %.1f s (limit 30 s)", worst, elapsed)};
}

Verdict spheroids() {
  double worst = 0;
  for (double ratio : {1.001, 1.5, 2.0, 5.0, 10.0, 100.0}) {
    const auto pro = demag_prolate(ratio, 1).factors;
    const auto pro_ref = demag_factors_integral(Ellipsoid({ratio, 1, 1})).tensor.factors;
    const auto obl = demag_oblate(ratio, 1).factors;
    const auto obl_ref = demag_factors_integral(Ellipsoid({ratio, ratio, 1})).tensor.factors;
    for (std::size_t i = 0; i < 3; ++i)
      worst = std::max({worst, std::abs(pro[i] - pro_ref[i]), std::abs(obl[i] - obl_ref[i])});
  }
  const double p21 = demag_prolate(2, 1).factors[0];
  return {worst < 1e-9 && std::abs(p21 - 0.173565) < 1e-5,
          fmt("max closed-vs-integral %.2e (tol 1e-9); prolate(2,1) P1=%.7f", worst, p21)};
}

Verdict scaling() {
  double pot = 0, dem = 0;
  for (int k = 0; k < 20; ++k) {
    const Ellipsoid e = random_log_ellipsoid();
    const double l = std::exp(uniform(std::log(0.1), std::log(10.0)));
    P x = on_level(e, uniform(0.0, 3.0));
    const double base = potential_at(e, x).value;
    for (double& c : x) c *= l;
    pot = std::max(pot, std::abs(potential_at(e.scaled(l), x).value - l * l * base) / (l * l * base));
    const auto a = demag_factors_integral(e).tensor.factors;
    const auto b = demag_factors_integral(e.scaled(l)).tensor.factors;
    for (std::size_t i = 0; i < 3; ++i) dem = std::max(dem, std::abs(a[i] - b[i]) / a[i]);
  }
  return {pot < 1e-9 && dem < 1e-9, fmt("potential rel err %.2e, demag rel err %.2e (tol 1e-9)", pot, dem)};
}

Verdict four_dimensions() {
  const Ellipsoid ball({1, 1, 1, 1});
  const P origin{0, 0, 0, 0};
  const double v = potential_at(ball, origin).value;
  // (1/4) int_0^inf (1+t)^{-2} dt = 1/4
  const auto mc = mc_potential(ball, origin, 1000000, 4);
  const double sigmas = std::abs(mc.value - v) / mc.std_error;
  return {std::abs(v - 0.25) < 1e-10 && sigmas < 4,
          fmt("|N(0)-1/4|=%.2e (tol 1e-10); MC %.6f +- %.6f (%.2f sigma)", std::abs(v - 0.25), mc.value,
              mc.std_error, sigmas)};
}

Verdict elliptic() {
  const double e = elliptic_e_incomplete(std::numbers::pi / 2, 0.5);
  bool identity = true;
  for (int k = 0; k < 100; ++k) {
    const double y = uniform(-50, 50);
    identity = identity && elliptic_e_incomplete(y, 0.0) == y;
  }
  return {std::abs(e - 1.3506439) < 1e-6 && identity,
          fmt("E(pi/2|0.5)=%.10f (want 1.3506439 +- 1e-6); E(y|0)==y %s", e, identity ? "holds" : "broken")};
}

Verdict cli_determinism() {
  auto call = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = call({"validate", "--axes", "3,2,1", "--seed", "42"});
  const auto b = call({"validate", "--axes", "3,2,1", "--seed", "42"});
  const bool same = a.first == 0 && a == b;

  std::vector<std::string> base{"potential", "--axes", "3,2,1"};
  std::vector<P> pts;
  for (int k = 0; k < 32; ++k) {
    P x = on_level(Ellipsoid({3, 2, 1}), uniform(0.1, 3.0));
    pts.push_back(x);
    base.push_back("--point=" + cli::format_number(x[0]) + "," + cli::format_number(x[1]) + "," +
                   cli::format_number(x[2]));
  }
  auto with_threads = [&](const char* t) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(t);
    return call(args);
  };
  const auto one = with_threads("1");
  const auto eight = with_threads("8");
  bool ordered = one.first == 0 && one == eight;
  std::istringstream lines(one.second);
  std::string line;
  for (const P& x : pts) {
    std::getline(lines, line);
    const std::string prefix = "{\"point\":[" + cli::format_number(x[0]) + "," + cli::format_number(x[1]) +
                               "," + cli::format_number(x[2]) + "]";
    ordered = ordered && line.rfind(prefix, 0) == 0;
  }
  return {same && ordered, fmt("validate reports identical: %s; order preserved across 1/8 threads: %s",
                               same ? "yes" : "no", ordered ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"sphere demagnetizing factors", sphere_factors},
      {"trace identity", trace_identity},
      {"factor ordering", ordering},
      {"sphere potential golden values", sphere_potential},
      {"confocal parameter for the sphere", tau_correctness},
      {"Poisson equation", poisson},
      {"boundary continuity", continuity},
      {"uniform interior field", uniform_field},
      {"shell theorem", shell_theorem},
      {"Monte Carlo oracle", monte_carlo},
      {"spheroid closed forms", spheroids},
      {"scaling invariances", scaling},
      {"dimension generality (N=4)", four_dimensions},
      {"elliptic integral", elliptic},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %2zu %-36s %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
