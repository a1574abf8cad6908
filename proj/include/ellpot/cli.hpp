#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ellpot/geometry.hpp"
#include "ellpot/quadrature.hpp"

namespace ellpot::cli {

/// MalformedLine carries the 1-based line number of the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::MalformedLine, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One point per line, either comma-separated reals or a JSON array.
/// Blank lines are skipped. Throws ParseError or DimensionMismatch.
std::vector<Point> parse_points(std::istream& in, std::size_t dimension);
std::vector<Point> parse_points_file(const std::string& path, std::size_t dimension);

/// Comma-separated finite reals, as accepted by --axes and --point.
std::vector<double> parse_real_list(const std::string& text);

/// 17 significant digits; integral values keep a trailing ".0".
std::string format_number(double v);

struct GridAxis {
  double min = 0;
  double max = 0;
  int steps = 2;
};

/// "min:max:steps", steps >= 2.
GridAxis parse_grid_axis(const std::string& text);

/// Points in row-major order, last axis fastest.
std::vector<Point> grid_points(std::span<const GridAxis> axes);

/// Resolution: explicit flag, then ELLIPSOID_THREADS, then hardware concurrency.
int resolve_threads(int flag_value);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
};

/// Invariant checks on one ellipsoid; deterministic for a fixed seed.
std::vector<ValidationCheck> run_validation(const Ellipsoid& e, std::uint64_t seed,
                                            const QuadratureConfig& cfg);

/// Entry point of the command-line tool; argv excludes the program name.
/// Returns 0 on success, 1 on usage or domain errors, 2 when some quadrature
/// did not converge (results are still written).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ellpot::cli
