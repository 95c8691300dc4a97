#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "occupancy.hpp"
#include "sim.hpp"
#include "world.hpp"

namespace voxplore {

/// Where the ground truth comes from: inline generation or a world file.
struct WorldSource {
  bool inline_generation = true;
  WorldKind kind = WorldKind::EmptyBox;
  std::int32_t dims[3] = {16, 16, 8};
  std::uint64_t seed = 1;
  std::int32_t fire_count = 0;
  double resolution = 1.0;
  std::string file;  // used when inline_generation is false
};

struct Scenario {
  WorldSource world;
  std::vector<VoxelKey> robots;
  SensorConfig sensor;
  StrategyConfig strategy;
  PotentialFieldConfig pf;
  std::optional<EllipseSpec> ellipse;
  std::int32_t map_depth = 0;  // 0 = auto
  std::int64_t max_ticks = 5000;
  std::uint64_t seed = 1;
};

/// Parses and fully validates a scenario document, filling every default.
/// The ground truth is built during validation so that robot starts can be
/// checked against it; ValidationError names the offending robot index.
Scenario parse_scenario(const std::string& json_text);
Scenario parse_scenario_file(const std::string& path);

/// Canonical form: every field explicit, keys sorted, two-space indent,
/// trailing newline. parse(canonical(s)) == s.
std::string canonical_json(const Scenario& s);

/// FNV-1a 64-bit hash of the canonical form, as 16 hex digits.
std::string scenario_digest(const Scenario& s);

WorldGrid build_world(const WorldSource& source);

/// Overrides used by the compare command. A strategy token is a kind name
/// optionally followed by "/" and a coordination name, e.g.
/// "cost_utility/hungarian".
void apply_strategy_token(Scenario& s, const std::string& token);

struct RunBundle {
  Metrics metrics;
  WorldGrid world;
  OccupancyOctree map;
};

/// Builds the world and simulation from the scenario and runs it to
/// completion or max_ticks.
RunBundle run_scenario(const Scenario& s);

}  // namespace voxplore
