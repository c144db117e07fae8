#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgtail/bounds.hpp"

namespace hgtail {

/// Fixed CSV header of sweep output.
inline constexpr std::string_view kSweepCsvHeader =
    "delta,threshold_d,clamped,exact,chernoff_direct,chernoff_swapped,beta_direct,"
    "beta_swapped,serfling,best";

/// A delta grid over Pr[X >= n(K/N + delta)] for fixed (N, K/N, n).
struct SweepConfig {
  std::int64_t population = 0;
  double ratio = 0.0;  // K/N; K = round(ratio * N)
  std::int64_t draws = 0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  int delta_steps = 0;
  MethodSet methods = MethodSet::all();
  bool include_exact = true;

  std::int64_t successes() const;
  HypergeomParams params() const;
  /// Throws ValidationError describing the first violated constraint.
  void validate() const;
  /// delta_steps points, both endpoints included.
  std::vector<double> delta_grid() const;
};

/// One CSV row. Bound cells follow kBoundMethods order; an empty optional is
/// an empty cell.
struct SweepRecord {
  double delta = 0.0;
  std::int64_t threshold = 0;
  bool clamped = false;
  std::optional<double> exact;
  std::array<std::optional<double>, 5> bounds;
  std::optional<double> best;

  std::optional<double> bound(BoundMethod m) const;
};

/// d = ceil(n (K/N + delta)); values within 1e-9 of an integer snap to it so
/// that rounding in n * delta never moves d past the exact threshold.
std::int64_t sweep_threshold(const HypergeomParams& params, double delta);

/// Evaluates one grid point.
SweepRecord evaluate_sweep_point(const SweepConfig& config, double delta);

/// Rows in grid order. Rows are independent and may be split across threads.
std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned threads = 1);

/// Scientific notation with 17 significant digits.
std::string format_probability(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

/// Writes to a sibling temporary file and renames it over `path`, so a failed
/// run never leaves a partial file behind.
void write_sweep_csv_file(const std::filesystem::path& path,
                          const std::vector<SweepRecord>& records);

/// Parses a file produced by write_sweep_csv. Throws std::runtime_error on a
/// header or cell mismatch.
std::vector<SweepRecord> parse_sweep_csv(std::istream& in);

}  // namespace hgtail
