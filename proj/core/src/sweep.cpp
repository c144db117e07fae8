#include "hgtail/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>

#include "hgtail/errors.hpp"
#include "hgtail/hypergeom.hpp"

namespace hgtail {
namespace {

std::size_t column_of(BoundMethod m) {
  const auto it = std::find(kBoundMethods.begin(), kBoundMethods.end(), m);
  return static_cast<std::size_t>(it - kBoundMethods.begin());
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

std::optional<double> parse_cell(std::string_view cell, std::size_t line_no) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw std::runtime_error("malformed numeric cell '" + std::string(cell) + "' on line " +
                             std::to_string(line_no));
  }
  return v;
}

void write_cell(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << format_probability(*v);
}

}  // namespace

std::int64_t SweepConfig::successes() const {
  return static_cast<std::int64_t>(std::llround(ratio * static_cast<double>(population)));
}

HypergeomParams SweepConfig::params() const {
  return HypergeomParams(population, successes(), draws);
}

void SweepConfig::validate() const {
  if (population < 1) throw ValidationError("population must be at least 1");
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw ValidationError("ratio must lie in [0, 1]");
  const std::int64_t K = successes();
  if (K < 0 || K > population) throw ValidationError("round(ratio * N) falls outside [0, N]");
  if (draws < 1 || draws > population) throw ValidationError("draws must lie in [1, N]");
  (void)params();
  const double max_delta = 1.0 - static_cast<double>(K) / static_cast<double>(population);
  if (!(delta_min >= 0.0)) throw ValidationError("delta-min must be non-negative");
  if (!(delta_min < delta_max)) throw ValidationError("delta-min must be below delta-max");
  if (!(delta_max <= max_delta)) {
    throw ValidationError("delta-max must not exceed 1 - K/N = " + std::to_string(max_delta));
  }
  if (delta_steps < 2) throw ValidationError("delta-steps must be at least 2");
  if (methods.empty()) throw ValidationError("method set is empty");
}

std::vector<double> SweepConfig::delta_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(std::max(delta_steps, 0)));
  const double step = (delta_max - delta_min) / static_cast<double>(delta_steps - 1);
  for (int i = 0; i < delta_steps; ++i) grid[i] = delta_min + step * i;
  if (!grid.empty()) grid.back() = delta_max;
  return grid;
}

std::optional<double> SweepRecord::bound(BoundMethod m) const {
  return bounds[column_of(m)];
}

std::int64_t sweep_threshold(const HypergeomParams& params, double delta) {
  const double n = static_cast<double>(params.draws());
  const double x = static_cast<double>(params.draws() * params.successes()) /
                       static_cast<double>(params.population()) +
                   n * delta;
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, std::fabs(x))) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(x));
}

SweepRecord evaluate_sweep_point(const SweepConfig& config, double delta) {
  const HypergeomParams params = config.params();
  SweepRecord rec;
  rec.delta = delta;
  rec.threshold = sweep_threshold(params, delta);
  rec.clamped = rec.threshold < params.min_bound_threshold();

  if (config.include_exact && params.support_size() <= kExactSupportLimit) {
    rec.exact = exact_upper_tail(params, rec.threshold).linear();
  }
  const auto methods = config.methods.members();
  if (rec.clamped) {
    for (auto m : methods) rec.bounds[column_of(m)] = 1.0;
    rec.best = 1.0;
    return rec;
  }
  const TailQuery query{params, rec.threshold, TailDirection::Upper};
  const SymmetryRep rep = identity_rep(query);
  for (auto m : methods) {
    const BoundResult r = evaluate_method(m, rep);
    if (r.applicable) rec.bounds[column_of(m)] = r.linear_value;
  }
  try {
    rec.best = best_bound(query, config.methods, {.include_exact = false}).best.linear_value;
  } catch (const NoApplicableMethodError&) {
    rec.best = std::nullopt;
  }
  return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned threads) {
  config.validate();
  const auto grid = config.delta_grid();
  std::vector<SweepRecord> records(grid.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) records[i] = evaluate_sweep_point(config, grid[i]);
    return records;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < grid.size(); i += workers) {
        records[i] = evaluate_sweep_point(config, grid[i]);
      }
    });
  }
  pool.clear();
  return records;
}

std::string format_probability(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_probability(r.delta) << ',' << r.threshold << ',' << (r.clamped ? 1 : 0);
    write_cell(out, r.exact);
    for (const auto& b : r.bounds) write_cell(out, b);
    write_cell(out, r.best);
    out << '\n';
  }
}

void write_sweep_csv_file(const std::filesystem::path& path,
                          const std::vector<SweepRecord>& records) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_sweep_csv(out, records);
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " +
                             ec.message());
  }
}

std::vector<SweepRecord> parse_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw std::runtime_error("CSV header does not match the sweep schema");
  }
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 10) {
      throw std::runtime_error("expected 10 fields on line " + std::to_string(line_no));
    }
    SweepRecord r;
    const auto delta = parse_cell(f[0], line_no);
    const auto d = parse_cell(f[1], line_no);
    if (!delta || !d || (f[2] != "0" && f[2] != "1")) {
      throw std::runtime_error("missing key columns on line " + std::to_string(line_no));
    }
    r.delta = *delta;
    r.threshold = static_cast<std::int64_t>(*d);
    r.clamped = f[2] == "1";
    r.exact = parse_cell(f[3], line_no);
    for (std::size_t i = 0; i < r.bounds.size(); ++i) r.bounds[i] = parse_cell(f[4 + i], line_no);
    r.best = parse_cell(f[9], line_no);
    records.push_back(r);
  }
  return records;
}

}  // namespace hgtail
