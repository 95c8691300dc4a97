#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sim.hpp"

namespace voxplore {

struct Scenario;

/// Per-tick metrics table: header `tick,coverage,frontier_cells,robot_id,distance`,
/// one row per robot per tick.
std::string metrics_csv(const Metrics& metrics);

/// Final summary document with fields {scenario_digest, ticks, coverage,
/// total_distance, detections, map_nodes}.
std::string summary_json(const Metrics& metrics, const std::string& scenario_digest);

struct CompareRow {
  std::string strategy;
  std::uint64_t seed = 0;
  Metrics metrics;
};

/// Comparison table: one data row per (strategy, seed) run sorted by strategy
/// then seed, followed by a commented summary block with per-strategy median,
/// min and max of ticks-to-complete and coverage. Aggregates cover only runs
/// that finished; unfinished runs are counted separately.
std::string compare_csv(std::vector<CompareRow> rows);

/// Runs the (strategy, seed) cross product over the base scenario and renders
/// the comparison table. `any_unfinished`, when given, reports whether some
/// run stopped at max_ticks.
std::string run_compare(const Scenario& base, const std::vector<std::string>& strategies,
                        const std::vector<std::uint64_t>& seeds,
                        bool* any_unfinished = nullptr);

}  // namespace voxplore
