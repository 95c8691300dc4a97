#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "scenario.hpp"

namespace voxplore {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::string metrics_csv(const Metrics& metrics) {
  std::ostringstream out;
  out << "tick,coverage,frontier_cells,robot_id,distance\n";
  for (const MetricsRow& row : metrics.series) {
    out << row.tick << ',' << fmt_double(row.coverage) << ',' << row.frontier_cells << ','
        << row.robot_id << ',' << fmt_double(row.distance) << '\n';
  }
  return out.str();
}

std::string summary_json(const Metrics& metrics, const std::string& scenario_digest) {
  nlohmann::json doc;
  doc["scenario_digest"] = scenario_digest;
  doc["ticks"] = metrics.total_ticks;
  doc["coverage"] = metrics.coverage;
  doc["total_distance"] = metrics.total_distance;
  doc["completed"] = metrics.completed;
  doc["map_nodes"] = metrics.map_nodes;
  nlohmann::json dets = nlohmann::json::array();
  for (const FireDetection& d : metrics.detections) {
    dets.push_back({{"voxel", {d.voxel.x, d.voxel.y, d.voxel.z}},
                    {"tick", d.tick},
                    {"robot_id", d.robot_id}});
  }
  doc["detections"] = dets;
  return doc.dump(2) + "\n";
}

std::string compare_csv(std::vector<CompareRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    if (a.strategy != b.strategy) return a.strategy < b.strategy;
    return a.seed < b.seed;
  });

  std::ostringstream out;
  out << "strategy,seed,ticks,coverage,total_distance,detections\n";
  for (const CompareRow& row : rows) {
    out << row.strategy << ',' << row.seed << ',' << row.metrics.total_ticks << ','
        << fmt_double(row.metrics.coverage) << ',' << fmt_double(row.metrics.total_distance)
        << ',' << row.metrics.detections.size() << '\n';
  }

  // Aggregates per strategy; only completed runs enter the statistics.
  std::map<std::string, std::vector<const Metrics*>> by_strategy;
  for (const CompareRow& row : rows) by_strategy[row.strategy].push_back(&row.metrics);

  out << "# summary: strategy,completed,unfinished,ticks_median,ticks_min,ticks_max,"
         "coverage_median,coverage_min,coverage_max\n";
  for (const auto& [strategy, runs] : by_strategy) {
    std::vector<double> ticks;
    std::vector<double> coverage;
    std::int64_t unfinished = 0;
    for (const Metrics* m : runs) {
      if (!m->completed) {
        ++unfinished;
        continue;
      }
      ticks.push_back(static_cast<double>(m->total_ticks));
      coverage.push_back(m->coverage);
    }
    out << "# " << strategy << ',' << ticks.size() << ',' << unfinished;
    if (ticks.empty()) {
      out << ",-,-,-,-,-,-\n";
      continue;
    }
    out << ',' << fmt_double(median(ticks)) << ','
        << fmt_double(*std::min_element(ticks.begin(), ticks.end())) << ','
        << fmt_double(*std::max_element(ticks.begin(), ticks.end())) << ','
        << fmt_double(median(coverage)) << ','
        << fmt_double(*std::min_element(coverage.begin(), coverage.end())) << ','
        << fmt_double(*std::max_element(coverage.begin(), coverage.end())) << '\n';
  }
  return out.str();
}

std::string run_compare(const Scenario& base, const std::vector<std::string>& strategies,
                        const std::vector<std::uint64_t>& seeds, bool* any_unfinished) {
  if (strategies.empty()) raise(Err::InvalidArgument, "compare needs at least one strategy");
  if (seeds.empty()) raise(Err::InvalidArgument, "compare needs at least one seed");

  if (any_unfinished) *any_unfinished = false;
  std::vector<CompareRow> rows;
  rows.reserve(strategies.size() * seeds.size());
  for (const std::string& token : strategies) {
    for (const std::uint64_t seed : seeds) {
      Scenario s = base;
      apply_strategy_token(s, token);
      s.seed = seed;
      CompareRow row;
      row.strategy = token;
      row.seed = seed;
      row.metrics = run_scenario(s).metrics;
      if (any_unfinished && !row.metrics.completed) *any_unfinished = true;
      rows.push_back(std::move(row));
    }
  }
  return compare_csv(std::move(rows));
}

}  // namespace voxplore
