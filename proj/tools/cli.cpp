#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hgtail/bounds.hpp"
#include "hgtail/errors.hpp"
#include "hgtail/hypergeom.hpp"
#include "hgtail/sweep.hpp"
#include "hgtail/verify.hpp"
#include "report_format.hpp"

namespace hgtail::cli {
namespace {

struct BoundArgs {
  std::int64_t population = 0;
  std::int64_t successes = 0;
  std::int64_t draws = 0;
  std::int64_t threshold = 0;
  std::string methods = "all";
  std::string format = "text";
  std::string direction = "upper";
};

struct SweepArgs {
  std::int64_t population = 0;
  double ratio = 0.0;
  std::int64_t draws = 0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  int delta_steps = 0;
  std::string out;
  std::string methods = "all";
  bool no_exact = false;
  unsigned threads = 1;
};

struct VerifyArgs {
  std::int64_t max_population = 40;
  std::string report;
  bool strict = false;
  unsigned threads = 1;
};

struct InvertArgs {
  std::int64_t population = 0;
  std::int64_t successes = 0;
  std::int64_t draws = 0;
  double epsilon = 0.0;
  std::string methods = "all";
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const HypergeomParams params(a.population, a.successes, a.draws);
  const MethodSet methods = MethodSet::parse(a.methods);
  const TailDirection dir = a.direction == "lower" ? TailDirection::Lower : TailDirection::Upper;
  const BoundReport report = best_bound({params, a.threshold, dir}, methods);
  if (a.format == "json") {
    write_report_json(out, report);
  } else {
    write_report_text(out, report);
  }
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  SweepConfig config;
  config.population = a.population;
  config.ratio = a.ratio;
  config.draws = a.draws;
  config.delta_min = a.delta_min;
  config.delta_max = a.delta_max;
  config.delta_steps = a.delta_steps;
  config.methods = MethodSet::parse(a.methods);
  config.include_exact = !a.no_exact;
  config.validate();
  const auto records = run_sweep(config, a.threads);
  write_sweep_csv_file(a.out, records);
  out << "wrote " << records.size() << " records to " << a.out << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions options;
  options.max_population = a.max_population;
  options.threads = a.threads;
  const VerifyReport report = run_verify(options);
  write_verify_summary(out, report);
  if (!a.report.empty()) {
    std::ofstream file(a.report);
    if (!file) throw std::runtime_error("cannot open report file " + a.report);
    write_verify_json(file, report, a.strict);
  }
  return report.exit_code(a.strict);
}

int cmd_invert(const InvertArgs& a, std::ostream& out) {
  const HypergeomParams params(a.population, a.successes, a.draws);
  const MethodSet methods = MethodSet::parse(a.methods);
  const InversionResult r = invert_threshold(params, a.epsilon, methods);
  out << r.threshold << "\n";
  out << "bound " << format_probability(r.bound.linear());
  if (r.beyond_support) out << "  (beyond support: exact tail is 0)";
  out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tail bounds for the hypergeometric distribution", "hgtail"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate every bound for one query");
  bound_cmd->add_option("--population", bound.population, "Population size N")->required();
  bound_cmd->add_option("--successes", bound.successes, "Marked items K")->required();
  bound_cmd->add_option("--draws", bound.draws, "Sample size n")->required();
  bound_cmd->add_option("--threshold", bound.threshold, "Tail threshold d")->required();
  bound_cmd->add_option("--methods", bound.methods, "Comma-separated methods or 'all'");
  bound_cmd->add_option("--format", bound.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  bound_cmd->add_option("--direction", bound.direction, "Tail direction")
      ->check(CLI::IsMember({"upper", "lower"}));

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Write a delta sweep as CSV");
  sweep_cmd->add_option("--population", sweep.population, "Population size N")->required();
  sweep_cmd->add_option("--ratio", sweep.ratio, "Marked fraction K/N")->required();
  sweep_cmd->add_option("--draws", sweep.draws, "Sample size n")->required();
  sweep_cmd->add_option("--delta-min", sweep.delta_min, "First delta")->required();
  sweep_cmd->add_option("--delta-max", sweep.delta_max, "Last delta")->required();
  sweep_cmd->add_option("--delta-steps", sweep.delta_steps, "Grid points")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV path")->required();
  sweep_cmd->add_option("--methods", sweep.methods, "Comma-separated methods or 'all'");
  sweep_cmd->add_flag("--no-exact", sweep.no_exact, "Leave the exact column empty");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the exhaustive invariant battery");
  verify_cmd->add_option("--max-population", verify.max_population, "Largest N in the grid");
  verify_cmd->add_option("--report", verify.report, "Write a JSON report to this path");
  verify_cmd->add_flag("--strict", verify.strict, "Fail on swap-advantage violations too");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  InvertArgs invert;
  auto* invert_cmd = app.add_subcommand("invert", "Smallest threshold whose bound is <= epsilon");
  invert_cmd->add_option("--population", invert.population, "Population size N")->required();
  invert_cmd->add_option("--successes", invert.successes, "Marked items K")->required();
  invert_cmd->add_option("--draws", invert.draws, "Sample size n")->required();
  invert_cmd->add_option("--epsilon", invert.epsilon, "Target tail probability")->required();
  invert_cmd->add_option("--methods", invert.methods, "Comma-separated methods or 'all'");

  std::vector<const char*> argv{"hgtail"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) return cmd_bound(bound, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
    if (invert_cmd->parsed()) return cmd_invert(invert, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoApplicableMethodError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hgtail::cli
