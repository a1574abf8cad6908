#include "ellpot/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "ellpot/demag.hpp"
#include "ellpot/potential.hpp"

namespace ellpot::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_real(const std::string& text, double& value) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  value = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(value);
}

using Value = std::variant<double, std::string, bool, std::vector<double>>;
using Row = std::vector<std::pair<std::string, Value>>;

std::string json_line(const Row& row) {
  std::string s = "{";
  bool first = true;
  for (const auto& [key, value] : row) {
    if (!first) s += ",";
    first = false;
    s += "\"" + key + "\":";
    if (const auto* d = std::get_if<double>(&value)) {
      s += std::isfinite(*d) ? format_number(*d) : "null";
    } else if (const auto* str = std::get_if<std::string>(&value)) {
      s += "\"" + *str + "\"";
    } else if (const auto* b = std::get_if<bool>(&value)) {
      s += *b ? "true" : "false";
    } else {
      s += "[";
      const auto& v = std::get<std::vector<double>>(value);
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
      s += "]";
    }
  }
  return s + "}";
}

std::string csv_header(const Row& row) {
  std::string s;
  for (const auto& [key, value] : row) {
    if (const auto* v = std::get_if<std::vector<double>>(&value)) {
      const std::string prefix = key == "point" ? "x" : key;
      for (std::size_t i = 0; i < v->size(); ++i)
        s += (s.empty() ? "" : ",") + prefix + std::to_string(i + 1);
    } else {
      s += (s.empty() ? "" : ",") + key;
    }
  }
  return s;
}

std::string csv_line(const Row& row) {
  std::string s;
  auto put = [&](const std::string& field) { s += (s.empty() ? "" : ",") + field; };
  for (const auto& [key, value] : row) {
    if (const auto* d = std::get_if<double>(&value)) {
      put(format_number(*d));
    } else if (const auto* str = std::get_if<std::string>(&value)) {
      put(*str);
    } else if (const auto* b = std::get_if<bool>(&value)) {
      put(*b ? "true" : "false");
    } else {
      for (double v : std::get<std::vector<double>>(value)) put(format_number(v));
    }
  }
  return s;
}

void emit(const std::vector<Row>& rows, bool csv, std::ostream& out) {
  if (csv && !rows.empty()) out << csv_header(rows.front()) << '\n';
  for (const Row& row : rows) out << (csv ? csv_line(row) : json_line(row)) << '\n';
}

template <class Fn>
auto parallel_map(std::size_t count, int threads, Fn fn) {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int pool_size = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), count));
  if (pool_size <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker);
  }
  // First failure in input order wins, independent of scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

struct Options {
  std::string axes;
  std::vector<std::string> points;
  std::string points_file;
  std::string format = "json";
  double rel_tol = QuadratureConfig{}.rel_tol;
  double abs_tol = QuadratureConfig{}.abs_tol;
  std::optional<double> scale;
  std::optional<double> G;
  std::optional<double> rho;
  std::optional<double> mass;
  std::vector<std::string> grid;
  int threads = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--axes", o.axes, "Semi-axes a1,a2,...,aN")->required();
  sub.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance");
  sub.add_option("--abs-tol", o.abs_tol, "Quadrature absolute tolerance");
  sub.add_option("--threads", o.threads, "Worker threads");
}

void add_points(CLI::App& sub, Options& o) {
  sub.add_option("--point", o.points, "Evaluation point x1,...,xN (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sub.add_option("--points-file", o.points_file, "CSV or JSON-lines file of points");
}

void add_potential_extras(CLI::App& sub, Options& o) {
  sub.add_option("--scale", o.scale, "Also report the hollow shell scale*E minus E");
  sub.add_option("--G", o.G, "Gravitational constant");
  auto* rho = sub.add_option("--rho", o.rho, "Uniform density");
  auto* mass = sub.add_option("--mass", o.mass, "Total mass");
  rho->excludes(mass);
}

std::vector<Point> collect_points(const Options& o, std::size_t dimension) {
  std::vector<Point> points;
  for (const auto& text : o.points) {
    Point p = parse_real_list(text);
    if (p.size() != dimension)
      throw Error(ErrorCode::DimensionMismatch,
                  "--point " + text + " has " + std::to_string(p.size()) + " coordinates, expected " +
                      std::to_string(dimension));
    points.push_back(std::move(p));
  }
  if (!o.points_file.empty()) {
    auto more = parse_points_file(o.points_file, dimension);
    points.insert(points.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  if (points.empty()) throw Error(ErrorCode::Usage, "no points given (use --point or --points-file)");
  return points;
}

std::optional<GravityConfig> gravity_of(const Options& o) {
  if (!o.rho && !o.mass) {
    if (o.G) throw Error(ErrorCode::Usage, "--G needs --rho or --mass");
    return std::nullopt;
  }
  GravityConfig g;
  g.G = o.G.value_or(1.0);
  if (o.rho)
    g.source = Density{*o.rho};
  else
    g.source = TotalMass{*o.mass};
  g.validate();
  return g;
}

struct Outcome {
  Row row;
  bool converged = true;
};

Outcome potential_row(const Ellipsoid& e, const Point& x, const Options& o,
                      const QuadratureConfig& cfg, const std::optional<GravityConfig>& gravity) {
  const PotentialValue v = potential_at(e, x, cfg);
  Outcome out;
  out.converged = v.quadrature.converged;
  out.row = {{"point", x},
             {"class", std::string(to_string(v.point_class.kind))},
             {"tau", v.point_class.tau},
             {"value", v.value},
             {"error_estimate", v.quadrature.error_estimate}};
  if (o.scale) {
    const IntegralResult shell = hollow_shell_potential(e, *o.scale, x, cfg);
    out.row.emplace_back("hollow_value", shell.value);
    out.converged = out.converged && shell.converged;
  }
  if (gravity) {
    const IntegralResult u = gravitational_potential(e, *gravity, x, cfg);
    out.row.emplace_back("gravitational", u.value);
    out.converged = out.converged && u.converged;
  }
  out.row.emplace_back("converged", out.converged);
  return out;
}

Outcome field_row(const Ellipsoid& e, const Point& x, const QuadratureConfig& cfg) {
  const FieldValue v = field_at(e, x, cfg);
  Outcome out;
  out.converged = v.quadrature.converged;
  out.row = {{"point", x},
             {"class", std::string(to_string(v.point_class.kind))},
             {"tau", v.point_class.tau},
             {"field", v.gradient},
             {"error_estimate", v.quadrature.error_estimate},
             {"converged", out.converged}};
  return out;
}

Outcome tau_row(const Ellipsoid& e, const Point& x) {
  const PointClassification c = classify_point(e, x);
  return {{{"point", x}, {"class", std::string(to_string(c.kind))}, {"tau", c.tau}}, true};
}

int finish_rows(const std::vector<Outcome>& outcomes, bool csv, std::ostream& out) {
  std::vector<Row> rows;
  bool converged = true;
  for (const auto& o : outcomes) {
    rows.push_back(o.row);
    converged = converged && o.converged;
  }
  emit(rows, csv, out);
  return converged ? 0 : 2;
}

int execute(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  const Ellipsoid e(parse_real_list(o.axes));
  QuadratureConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.abs_tol = o.abs_tol;
  cfg.validate();
  const bool csv = o.format == "csv";
  const int threads = resolve_threads(o.threads);

  if (command == "potential" || command == "grid") {
    if (o.scale && !(*o.scale > 1))
      throw Error(ErrorCode::ScaleNotGreaterThanOne, "--scale must be > 1");
    const auto gravity = gravity_of(o);
    std::vector<Point> points;
    if (command == "grid") {
      if (o.grid.size() != e.dimension())
        throw Error(ErrorCode::Usage, "--grid must be given once per axis (" +
                                          std::to_string(e.dimension()) + " times)");
      std::vector<GridAxis> axes;
      for (const auto& g : o.grid) axes.push_back(parse_grid_axis(g));
      points = grid_points(axes);
    } else {
      points = collect_points(o, e.dimension());
    }
    const auto outcomes = parallel_map(points.size(), threads, [&](std::size_t i) {
      return potential_row(e, points[i], o, cfg, gravity);
    });
    return finish_rows(outcomes, csv, out);
  }
  if (command == "field") {
    const auto points = collect_points(o, e.dimension());
    const auto outcomes =
        parallel_map(points.size(), threads, [&](std::size_t i) { return field_row(e, points[i], cfg); });
    return finish_rows(outcomes, csv, out);
  }
  if (command == "tau") {
    const auto points = collect_points(o, e.dimension());
    const auto outcomes =
        parallel_map(points.size(), threads, [&](std::size_t i) { return tau_row(e, points[i]); });
    return finish_rows(outcomes, csv, out);
  }
  if (command == "demag") {
    const DemagIntegral d = demag_factors_integral(e, cfg);
    const auto& f = d.tensor.factors;
    Row row{{"P", std::vector<double>(f.begin(), f.end())}, {"trace", d.tensor.trace()}};
    const auto closed = demag_closed_form(e).factors;
    row.emplace_back("closed_form", std::vector<double>(closed.begin(), closed.end()));
    row.emplace_back("error_estimate", d.quadrature.error_estimate);
    row.emplace_back("converged", d.quadrature.converged);
    emit({row}, csv, out);
    return d.quadrature.converged ? 0 : 2;
  }
  if (command == "validate") {
    const auto checks = run_validation(e, o.seed, cfg);
    std::vector<Row> rows;
    int failed = 0;
    for (const auto& c : checks) {
      if (!c.passed) ++failed;
      rows.push_back({{"check", c.name},
                      {"passed", c.passed},
                      {"max_error", c.max_error},
                      {"tolerance", c.tolerance},
                      {"cases", static_cast<double>(c.cases)}});
    }
    emit(rows, csv, out);
    if (!csv)
      out << json_line({{"summary", std::string("validate")},
                        {"checks", static_cast<double>(checks.size())},
                        {"failed", static_cast<double>(failed)},
                        {"seed", static_cast<double>(o.seed)}})
          << '\n';
    if (failed > 0) err << "validate: " << failed << " check(s) failed\n";
    return failed > 0 ? 1 : 0;
  }
  throw Error(ErrorCode::Usage, "unknown command " + command);
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0;
    if (!parse_real(item, v)) throw Error(ErrorCode::Usage, "'" + text + "' is not a list of finite reals");
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorCode::Usage, "empty list of reals");
  return values;
}

std::vector<Point> parse_points(std::istream& in, std::size_t dimension) {
  std::vector<Point> points;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty()) continue;
    Point p;
    if (t.front() == '[') {
      const auto j = nlohmann::json::parse(t, nullptr, false);
      if (j.is_discarded() || !j.is_array()) throw ParseError(number, "invalid JSON array");
      for (const auto& v : j) {
        if (!v.is_number() || !std::isfinite(v.get<double>()))
          throw ParseError(number, "JSON array must hold finite numbers");
        p.push_back(v.get<double>());
      }
    } else {
      std::stringstream ss(t);
      std::string item;
      while (std::getline(ss, item, ',')) {
        double v = 0;
        if (!parse_real(item, v)) throw ParseError(number, "'" + trim(item) + "' is not a finite real");
        p.push_back(v);
      }
    }
    if (p.size() != dimension)
      throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(number) + " has " +
                                                    std::to_string(p.size()) + " coordinates, expected " +
                                                    std::to_string(dimension));
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<Point> parse_points_file(const std::string& path, std::size_t dimension) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_points(in, dimension);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

GridAxis parse_grid_axis(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c;
  GridAxis g;
  double steps = 0;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) ||
      !parse_real(a, g.min) || !parse_real(b, g.max) || !parse_real(c, steps) ||
      steps != std::floor(steps))
    throw Error(ErrorCode::Usage, "grid axis '" + text + "' is not min:max:steps");
  if (steps < 2 || steps > 1e7) throw Error(ErrorCode::Usage, "grid resolution must be >= 2 per axis");
  g.steps = static_cast<int>(steps);
  return g;
}

std::vector<Point> grid_points(std::span<const GridAxis> axes) {
  std::size_t total = 1;
  for (const auto& a : axes) total *= static_cast<std::size_t>(a.steps);
  std::vector<Point> points;
  points.reserve(total);
  std::vector<int> index(axes.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    Point p(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i)
      p[i] = axes[i].min + (axes[i].max - axes[i].min) * index[i] / (axes[i].steps - 1);
    points.push_back(std::move(p));
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++index[i] < axes[i].steps) break;
      index[i] = 0;
    }
  }
  return points;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ELLIPSOID_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newtonian potential, field and demagnetizing factors of homogeneous ellipsoids",
               "ellpot"};
  app.require_subcommand(1);
  Options o;

  auto* potential = app.add_subcommand("potential", "Unit-density potential at points");
  add_common(*potential, o);
  add_points(*potential, o);
  add_potential_extras(*potential, o);

  auto* field = app.add_subcommand("field", "Gradient of the potential at points");
  add_common(*field, o);
  add_points(*field, o);

  auto* tau = app.add_subcommand("tau", "Point class and confocal parameter");
  add_common(*tau, o);
  add_points(*tau, o);

  auto* demag = app.add_subcommand("demag", "Demagnetizing factors (N = 3)");
  add_common(*demag, o);

  auto* grid = app.add_subcommand("grid", "Potential on a regular grid");
  add_common(*grid, o);
  add_potential_extras(*grid, o);
  grid->add_option("--grid", o.grid, "min:max:steps, once per axis")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->required();

  auto* validate = app.add_subcommand("validate", "Run the invariant checks");
  add_common(*validate, o);
  validate->add_option("--seed", o.seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    return execute(app.get_subcommands().front()->get_name(), o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ellpot::cli
