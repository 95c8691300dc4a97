#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "frontier.hpp"
#include "geom.hpp"
#include "occupancy.hpp"
#include "planner.hpp"
#include "rng.hpp"
#include "strategy.hpp"
#include "world.hpp"

namespace voxplore {

enum class RobotStatus { Idle, Moving, Replanning, Done };

const char* robot_status_name(RobotStatus s);

struct RobotState {
  std::int32_t id = 0;
  Pose pose;
  std::optional<VoxelKey> target;
  std::optional<Path> path;
  std::size_t progress = 0;  // index of the waypoint the robot is at
  double distance_traveled = 0.0;
  RobotStatus status = RobotStatus::Replanning;
  std::int64_t last_plan_tick = -1;

  // Perimeter mission state (ellipse mode only).
  std::size_t waypoint_index = 0;
};

struct FireDetection {
  VoxelKey voxel;
  std::int64_t tick = 0;
  std::int32_t robot_id = 0;

  bool operator==(const FireDetection&) const = default;
};

enum class EventKind {
  FireDetected,
  TargetAssigned,
  RobotIdle,       // no reachable target, NoPath, or failed correction this tick
  RobotDone,
  WaypointReached, // ellipse mode: perimeter waypoint consumed
};

struct Event {
  std::int64_t tick = 0;
  std::int32_t robot_id = 0;
  EventKind kind = EventKind::TargetAssigned;
  VoxelKey voxel;

  bool operator==(const Event&) const = default;
};

struct MetricsRow {
  std::int64_t tick = 0;
  double coverage = 0.0;
  std::int64_t frontier_cells = 0;
  std::int32_t robot_id = 0;
  double distance = 0.0;
};

struct Metrics {
  std::vector<MetricsRow> series;  // one row per robot per tick, ticks 0..total_ticks
  std::int64_t total_ticks = 0;
  double coverage = 0.0;
  double total_distance = 0.0;
  bool completed = false;  // exploration (or perimeter mission) finished before max_ticks
  std::vector<FireDetection> detections;
  std::int64_t map_nodes = 0;
};

struct SimConfig {
  SensorConfig sensor;
  StrategyConfig strategy;
  PotentialFieldConfig pf;
  std::optional<EllipseSpec> ellipse;
  std::int64_t max_ticks = 5000;
  std::uint64_t seed = 1;
  std::int32_t map_depth = 0;  // 0 selects the smallest depth covering the world
};

/// Fraction of reachable ground-truth traversable voxels that the map labels
/// Free. Reachability is a flood fill from the robot start voxels.
double coverage(const OccupancyOctree& map, const WorldGrid& world,
                const std::vector<VoxelKey>& starts);

/// Tick-driven engine running the sense -> integrate -> detect -> assign ->
/// plan -> validate -> move pipeline for every robot. Sequential and fully
/// deterministic for a given (world, config, starts); independent instances
/// may run concurrently.
class Simulation {
 public:
  Simulation(WorldGrid world, SimConfig cfg, const std::vector<VoxelKey>& starts);

  /// Advances one tick; returns the events it produced.
  std::vector<Event> step();

  /// Steps until completion or max_ticks, recording metrics each tick.
  /// `observer`, when given, runs after every recorded tick (including the
  /// initial state) and is meant for test-side invariant checks.
  Metrics run(const std::function<void(const Simulation&)>& observer = {});

  bool complete() const { return complete_; }
  std::int64_t tick() const { return tick_; }
  const WorldGrid& world() const { return world_; }
  const OccupancyOctree& map() const { return map_; }
  const std::vector<RobotState>& robots() const { return robots_; }
  const std::vector<FireDetection>& detections() const { return detections_; }
  const SimConfig& config() const { return cfg_; }

  double coverage_now() const;
  std::int64_t frontier_cell_count() const;

  /// Transfers the map out of a finished simulation.
  OccupancyOctree release_map() && { return std::move(map_); }

 private:
  bool needs_replan(const RobotState& r) const;
  void coordination_pass(std::vector<Event>& events);
  void perimeter_pass(std::vector<Event>& events);
  bool adopt_plan(RobotState& r, const VoxelKey& goal, std::vector<Event>& events);
  void record_rows(Metrics& m) const;

  WorldGrid world_;
  SimConfig cfg_;
  OccupancyOctree map_;
  std::vector<RobotState> robots_;
  std::vector<VoxelKey> starts_;
  std::vector<VoxelKey> reachable_;  // ground-truth reachable traversable voxels
  std::vector<Vec3> perimeter_;      // ellipse waypoints, when enabled
  KeyBox world_bounds_;
  std::int64_t tick_ = 0;
  bool complete_ = false;
  std::unordered_set<VoxelKey, VoxelKeyHash> fire_seen_;
  std::vector<FireDetection> detections_;
  Rng noise_rng_;
};

}  // namespace voxplore
