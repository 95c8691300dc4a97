#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frontier.hpp"
#include "geom.hpp"
#include "occupancy.hpp"
#include "world.hpp"

namespace voxplore {

enum class StrategyKind { NearestFrontier, CostUtility };
enum class Coordination { Independent, Greedy, Hungarian };

StrategyKind strategy_kind_from_string(const std::string& s);
const char* strategy_kind_to_string(StrategyKind k);
Coordination coordination_from_string(const std::string& s);
const char* coordination_to_string(Coordination c);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::NearestFrontier;
  double lambda = 1.0;               // cost weight in the benefit
  Coordination coordination = Coordination::Independent;
  double discount_radius = 8.0;      // greedy only, meters
  std::int64_t replan_interval = 25; // ticks
  std::int64_t min_cluster_size = 3;

  void validate() const;
};

/// A scored exploration target: benefit = utility - lambda * cost.
struct Candidate {
  VoxelKey target;
  double utility = 0.0;  // expected information gain, voxels
  double cost = 0.0;     // path cost, meters
  double benefit = 0.0;
};

struct Assignment {
  std::vector<std::pair<std::int32_t, VoxelKey>> pairs;  // (robot id, target)
  std::vector<std::int32_t> idle;                        // robots without a target
};

/// Expected information gain of sensing at `target`: the number of Unknown
/// voxels whose centers lie within sensor max_range of the target center.
std::int64_t utility(const OccupancyOctree& map, const VoxelKey& target,
                     const SensorConfig& sensor);

inline double benefit(double utility, double cost, double lambda) {
  return utility - lambda * cost;
}

/// Representative of the reachable cluster with minimum path cost from the
/// robot; ties go to the lexicographically smallest target key. Empty when no
/// cluster is reachable.
std::optional<VoxelKey> select_nearest_frontier(const std::vector<FrontierCluster>& clusters,
                                                const Pose& robot,
                                                const OccupancyOctree& map);

/// One candidate per reachable cluster, scored per the benefit formula.
std::vector<Candidate> score_candidates(const std::vector<FrontierCluster>& clusters,
                                        const Pose& robot, const OccupancyOctree& map,
                                        const SensorConfig& sensor, const StrategyConfig& cfg);

/// Joint one-to-one assignment maximizing total benefit (Hungarian method on
/// negated benefits; rectangular instances padded with a sentinel strictly
/// worse than any real entry). Robots left on sentinel entries are idle.
Assignment assign_hungarian(const std::vector<Pose>& robots,
                            const std::vector<FrontierCluster>& clusters,
                            const OccupancyOctree& map, const SensorConfig& sensor,
                            const StrategyConfig& cfg);

/// Iterated greedy auction: repeatedly pick the best unassigned (robot,
/// cluster) pair, then halve the utility of remaining clusters within
/// discount_radius of the picked target.
Assignment assign_greedy(const std::vector<Pose>& robots,
                         const std::vector<FrontierCluster>& clusters,
                         const OccupancyOctree& map, const SensorConfig& sensor,
                         const StrategyConfig& cfg);

// Matrix-level cores used by the map-facing wrappers above and unit-testable
// on synthetic instances. Costs below zero mark unreachable pairs.

std::vector<std::int32_t> hungarian_assign_indices(
    const std::vector<std::vector<double>>& benefit_matrix, double sentinel);

struct GreedyInstance {
  std::vector<double> utilities;           // per cluster
  std::vector<Vec3> positions;             // per cluster, world coords
  std::vector<VoxelKey> keys;              // per cluster, for tie-breaking
  std::vector<std::vector<double>> costs;  // [robot][cluster], meters, < 0 unreachable
};

std::vector<std::int32_t> greedy_assign_indices(GreedyInstance instance, double lambda,
                                                double discount_radius);

}  // namespace voxplore
