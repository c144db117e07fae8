#include "report_format.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hgtail/sweep.hpp"

namespace hgtail::cli {
namespace {

using nlohmann::ordered_json;

ordered_json log10_json(const LogProb& p) {
  if (p.is_zero()) return nullptr;
  return p.log10();
}

ordered_json rep_json(const SymmetryRep& rep) {
  ordered_json chain = ordered_json::array();
  for (auto t : rep.transform_chain) chain.push_back(std::string(transform_name(t)));
  return {{"population", rep.params.population()},
          {"successes", rep.params.successes()},
          {"draws", rep.params.draws()},
          {"threshold", rep.threshold},
          {"transforms", chain}};
}

ordered_json result_json(const BoundResult& r) {
  ordered_json j;
  j["method"] = std::string(method_name(r.method));
  if (r.method == BoundMethod::BestCanonical) j["source"] = std::string(method_name(r.source));
  j["representation"] = rep_json(r.representation);
  j["log10_value"] = r.log_value ? log10_json(*r.log_value) : ordered_json(nullptr);
  j["value"] = r.linear_value ? ordered_json(*r.linear_value) : ordered_json(nullptr);
  j["applicable"] = r.applicable;
  if (r.degenerate_support) j["degenerate_support"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string rep_text(const SymmetryRep& rep) {
  return rep.chain_string() + " (" + std::to_string(rep.params.population()) + "," +
         std::to_string(rep.params.successes()) + "," + std::to_string(rep.params.draws()) +
         ",d=" + std::to_string(rep.threshold) + ")";
}

std::string log10_text(const LogProb& p) {
  if (p.is_zero()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10f", p.log10());
  return buf;
}

}  // namespace

void write_report_text(std::ostream& out, const BoundReport& report) {
  const auto& q = report.query;
  out << "query: Pr[X " << (q.direction == TailDirection::Upper ? ">=" : "<=") << " "
      << q.threshold << "] for X ~ Hypergeometric" << q.params.to_string() << "\n";
  if (q.direction == TailDirection::Lower) {
    out << "evaluated as: Pr[X' >= " << report.upper_query.threshold
        << "] for X' ~ Hypergeometric" << report.upper_query.params.to_string() << "\n";
  }
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %-34s %-16s %s\n", "method", "representation",
                "log10_value", "value");
  out << line;
  for (const auto& r : report.results) {
    if (r.applicable) {
      std::string value = format_probability(*r.linear_value);
      if (r.degenerate_support) value += "  (empty support)";
      std::snprintf(line, sizeof line, "%-18s %-34s %-16s %s\n",
                    std::string(method_name(r.method)).c_str(),
                    rep_text(r.representation).c_str(), log10_text(*r.log_value).c_str(),
                    value.c_str());
    } else {
      std::snprintf(line, sizeof line, "%-18s %-34s %-16s %s\n",
                    std::string(method_name(r.method)).c_str(),
                    rep_text(r.representation).c_str(), "n/a", r.note.c_str());
    }
    out << line;
  }
  if (report.exact) {
    out << "exact: " << format_probability(report.exact->linear()) << "  (log10 "
        << log10_text(*report.exact) << ")\n";
  } else {
    out << "exact: not computed (support exceeds " << kExactSupportLimit << " terms)\n";
  }
  out << "best:  " << format_probability(*report.best.linear_value) << "  ("
      << method_name(report.best.source) << " on " << rep_text(report.best.representation)
      << ")\n";
}

void write_report_json(std::ostream& out, const BoundReport& report) {
  const auto& q = report.query;
  ordered_json j;
  j["query"] = {{"population", q.params.population()},
                {"successes", q.params.successes()},
                {"draws", q.params.draws()},
                {"threshold", q.threshold},
                {"direction", q.direction == TailDirection::Upper ? "upper" : "lower"}};
  ordered_json results = ordered_json::array();
  for (const auto& r : report.results) results.push_back(result_json(r));
  j["results"] = std::move(results);
  if (report.exact) {
    j["exact"] = {{"log10_value", log10_json(*report.exact)},
                  {"value", report.exact->linear()}};
  } else {
    j["exact"] = nullptr;
  }
  j["best"] = result_json(report.best);
  out << j.dump(2) << "\n";
}

void write_verify_json(std::ostream& out, const VerifyReport& report, bool strict) {
  ordered_json props = ordered_json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"soundness", p.soundness},
                     {"checks", p.checks},
                     {"violations", p.violations},
                     {"details", p.details}});
  }
  ordered_json j;
  j["max_population"] = report.max_population;
  j["properties"] = std::move(props);
  j["soundness_violations"] = report.soundness_violations();
  j["swap_advantage_violations"] = report.observation_violations();
  j["exit_code"] = report.exit_code(strict);
  out << j.dump(2) << "\n";
}

}  // namespace hgtail::cli
