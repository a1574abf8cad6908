#include "ellpot/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ellpot/error.hpp"

namespace ellpot {

namespace {

// Kronrod abscissae on [0, 1]; odd entries (1, 3, 5) are the 7-point Gauss nodes,
// the last is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

// QUADPACK qk15 with its standard error heuristic.
Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double habs = std::abs(half);

  const double fc = f(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{}, fv2{};

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double value = resk * half;
  resabs *= habs;
  resasc *= habs;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
  if (resabs > uflow / (50 * eps)) err = std::max(50 * eps * resabs, err);
  return {a, b, value, err};
}

bool by_error(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0) || max_subdivisions < 1)
    throw Error(ErrorCode::InvalidConfig,
                "quadrature needs rel_tol > 0, abs_tol > 0 and max_subdivisions >= 1");
}

IntegralResult integrate_interval(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::InvalidBound, "integration bounds must be finite");

  IntegralResult result;
  if (a == b) return result;

  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod_15(f, a, b));
  result.evaluations = 15;

  double total = heap.front().value;
  double error = heap.front().error;
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (error > target() && static_cast<int>(heap.size()) < cfg.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Cannot split further in double precision.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);

    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }

  // Re-sum from scratch so the running updates leave no drift.
  std::sort(heap.begin(), heap.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  total = 0;
  error = 0;
  for (const Segment& s : heap) {
    total += s.value;
    error += s.error;
  }
  result.value = total;
  result.error_estimate = error;
  result.subdivisions = static_cast<int>(heap.size());
  result.converged = error <= target();
  return result;
}

IntegralResult integrate_tail(const Integrand& f, double lower, const QuadratureConfig& cfg) {
  if (!std::isfinite(lower)) throw Error(ErrorCode::InvalidBound, "lower bound must be finite");
  // Written in s = 1 - u so that bisection towards t = +inf keeps full relative
  // precision near the endpoint: t = lower + L (1 - s) / s, dt = L ds / s^2,
  // with length scale L = max(1, |lower|).
  const double scale = std::max(1.0, std::abs(lower));
  auto mapped = [&](double s) {
    const double t = lower + scale * (1 - s) / s;
    if (!std::isfinite(t)) return 0.0;
    const double v = f(t);
    if (v == 0) return 0.0;
    return scale * v / s / s;
  };
  return integrate_interval(mapped, 0.0, 1.0, cfg);
}

}  // namespace ellpot
