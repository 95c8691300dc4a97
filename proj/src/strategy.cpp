#include "strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "hungarian.hpp"
#include "planner.hpp"

namespace voxplore {

StrategyKind strategy_kind_from_string(const std::string& s) {
  if (s == "nearest_frontier") return StrategyKind::NearestFrontier;
  if (s == "cost_utility") return StrategyKind::CostUtility;
  raise(Err::InvalidArgument, "unknown strategy kind '" + s + "'");
}

const char* strategy_kind_to_string(StrategyKind k) {
  return k == StrategyKind::NearestFrontier ? "nearest_frontier" : "cost_utility";
}

Coordination coordination_from_string(const std::string& s) {
  if (s == "independent") return Coordination::Independent;
  if (s == "greedy") return Coordination::Greedy;
  if (s == "hungarian") return Coordination::Hungarian;
  raise(Err::InvalidArgument, "unknown coordination '" + s + "'");
}

const char* coordination_to_string(Coordination c) {
  switch (c) {
    case Coordination::Independent: return "independent";
    case Coordination::Greedy: return "greedy";
    case Coordination::Hungarian: return "hungarian";
  }
  return "?";
}

void StrategyConfig::validate() const {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    raise(Err::InvalidParams, "lambda must be finite and >= 0");
  }
  if (discount_radius < 0.0) raise(Err::InvalidParams, "discount_radius must be >= 0");
  if (replan_interval < 1) raise(Err::InvalidParams, "replan_interval must be >= 1");
  if (min_cluster_size < 1) raise(Err::InvalidParams, "min_cluster_size must be >= 1");
}

std::int64_t utility(const OccupancyOctree& map, const VoxelKey& target,
                     const SensorConfig& sensor) {
  if (!map.in_cube(target)) raise(Err::KeyOutOfRange, "utility target outside map cube");
  const double res = map.resolution();
  const double r2 = sensor.max_range * sensor.max_range;
  const std::int32_t reach = static_cast<std::int32_t>(std::floor(sensor.max_range / res));

  std::int64_t count = 0;
  for (std::int32_t dx = -reach; dx <= reach; ++dx) {
    for (std::int32_t dy = -reach; dy <= reach; ++dy) {
      for (std::int32_t dz = -reach; dz <= reach; ++dz) {
        const double d2 =
            (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy +
             static_cast<double>(dz) * dz) *
            res * res;
        if (d2 > r2) continue;
        const VoxelKey k{target.x + dx, target.y + dy, target.z + dz};
        if (!map.in_cube(k)) continue;
        if (map.state_of(k) == VoxelState::Unknown) ++count;
      }
    }
  }
  return count;
}

namespace {

// Path costs in meters from the robot to every cluster representative;
// negative marks unreachable.
std::vector<double> cluster_costs(const std::vector<FrontierCluster>& clusters,
                                  const Pose& robot, const OccupancyOctree& map) {
  const VoxelKey start = map.frame().key_of(robot.position);
  const auto dist = distance_field(map, start);
  std::vector<double> costs(clusters.size(), -1.0);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto it = dist.find(clusters[i].representative);
    if (it != dist.end()) costs[i] = it->second * map.resolution();
  }
  return costs;
}

std::vector<double> cluster_utilities(const std::vector<FrontierCluster>& clusters,
                                      const OccupancyOctree& map, const SensorConfig& sensor,
                                      const StrategyConfig& cfg) {
  std::vector<double> utils(clusters.size(), 0.0);
  if (cfg.kind == StrategyKind::CostUtility) {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      utils[i] = static_cast<double>(utility(map, clusters[i].representative, sensor));
    }
  }
  // Nearest-frontier keeps utilities at zero, so coordinated assignment
  // reduces to minimum total path cost.
  return utils;
}

}  // namespace

std::optional<VoxelKey> select_nearest_frontier(const std::vector<FrontierCluster>& clusters,
                                                const Pose& robot,
                                                const OccupancyOctree& map) {
  const std::vector<double> costs = cluster_costs(clusters, robot, map);
  std::optional<VoxelKey> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (costs[i] < 0.0) continue;
    const VoxelKey key = clusters[i].representative;
    if (costs[i] < best_cost || (costs[i] == best_cost && best && key < *best)) {
      best_cost = costs[i];
      best = key;
    }
  }
  return best;
}

std::vector<Candidate> score_candidates(const std::vector<FrontierCluster>& clusters,
                                        const Pose& robot, const OccupancyOctree& map,
                                        const SensorConfig& sensor, const StrategyConfig& cfg) {
  const std::vector<double> costs = cluster_costs(clusters, robot, map);
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (costs[i] < 0.0) continue;  // unreachable
    Candidate c;
    c.target = clusters[i].representative;
    c.utility = static_cast<double>(utility(map, c.target, sensor));
    c.cost = costs[i];
    c.benefit = benefit(c.utility, c.cost, cfg.lambda);
    out.push_back(c);
  }
  return out;
}

std::vector<std::int32_t> hungarian_assign_indices(
    const std::vector<std::vector<double>>& benefit_matrix, double sentinel) {
  const std::int32_t robots = static_cast<std::int32_t>(benefit_matrix.size());
  if (robots == 0) return {};
  const std::int32_t clusters = static_cast<std::int32_t>(benefit_matrix[0].size());
  const std::int32_t n = std::max(robots, clusters);
  if (clusters == 0) return std::vector<std::int32_t>(robots, -1);

  std::vector<std::vector<double>> cost(n, std::vector<double>(n, -sentinel));
  for (std::int32_t r = 0; r < robots; ++r) {
    for (std::int32_t c = 0; c < clusters; ++c) {
      cost[r][c] = -benefit_matrix[r][c];
    }
  }

  const std::vector<std::int32_t> match = solve_assignment_min_cost(cost);
  std::vector<std::int32_t> out(robots, -1);
  for (std::int32_t r = 0; r < robots; ++r) {
    const std::int32_t c = match[r];
    if (c < clusters && benefit_matrix[r][c] > sentinel) out[r] = c;
  }
  return out;
}

std::vector<std::int32_t> greedy_assign_indices(GreedyInstance in, double lambda,
                                                double discount_radius) {
  const std::size_t robots = in.costs.size();
  const std::size_t clusters = in.utilities.size();
  std::vector<std::int32_t> out(robots, -1);
  std::vector<bool> robot_done(robots, false);
  std::vector<bool> cluster_done(clusters, false);

  const std::size_t rounds = std::min(robots, clusters);
  for (std::size_t round = 0; round < rounds; ++round) {
    double best = -std::numeric_limits<double>::infinity();
    std::int32_t best_r = -1, best_c = -1;
    for (std::size_t r = 0; r < robots; ++r) {
      if (robot_done[r]) continue;
      for (std::size_t c = 0; c < clusters; ++c) {
        if (cluster_done[c] || in.costs[r][c] < 0.0) continue;
        const double b = benefit(in.utilities[c], in.costs[r][c], lambda);
        const bool better =
            b > best ||
            (b == best && (best_c < 0 || in.keys[c] < in.keys[best_c] ||
                           (in.keys[c] == in.keys[best_c] &&
                            static_cast<std::int32_t>(r) < best_r)));
        if (better) {
          best = b;
          best_r = static_cast<std::int32_t>(r);
          best_c = static_cast<std::int32_t>(c);
        }
      }
    }
    if (best_r < 0) break;  // nothing reachable remains

    out[best_r] = best_c;
    robot_done[best_r] = true;
    cluster_done[best_c] = true;

    for (std::size_t c = 0; c < clusters; ++c) {
      if (cluster_done[c]) continue;
      if ((in.positions[c] - in.positions[best_c]).norm() <= discount_radius) {
        in.utilities[c] *= 0.5;
      }
    }
  }
  return out;
}

namespace {

Assignment indices_to_assignment(const std::vector<std::int32_t>& picks,
                                 const std::vector<FrontierCluster>& clusters) {
  Assignment out;
  for (std::size_t r = 0; r < picks.size(); ++r) {
    if (picks[r] >= 0) {
      out.pairs.emplace_back(static_cast<std::int32_t>(r),
                             clusters[picks[r]].representative);
    } else {
      out.idle.push_back(static_cast<std::int32_t>(r));
    }
  }
  return out;
}

}  // namespace

Assignment assign_hungarian(const std::vector<Pose>& robots,
                            const std::vector<FrontierCluster>& clusters,
                            const OccupancyOctree& map, const SensorConfig& sensor,
                            const StrategyConfig& cfg) {
  const std::vector<double> utils = cluster_utilities(clusters, map, sensor, cfg);

  double u_max = 0.0, c_max = 0.0;
  std::vector<std::vector<double>> costs(robots.size());
  for (std::size_t r = 0; r < robots.size(); ++r) {
    costs[r] = cluster_costs(clusters, robots[r], map);
    for (const double c : costs[r]) c_max = std::max(c_max, c);
  }
  for (const double u : utils) u_max = std::max(u_max, u);
  const double sentinel = -(u_max + cfg.lambda * c_max + 1.0);

  std::vector<std::vector<double>> benefits(robots.size(),
                                            std::vector<double>(clusters.size(), sentinel));
  for (std::size_t r = 0; r < robots.size(); ++r) {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (costs[r][c] >= 0.0) benefits[r][c] = benefit(utils[c], costs[r][c], cfg.lambda);
    }
  }
  return indices_to_assignment(hungarian_assign_indices(benefits, sentinel), clusters);
}

Assignment assign_greedy(const std::vector<Pose>& robots,
                         const std::vector<FrontierCluster>& clusters,
                         const OccupancyOctree& map, const SensorConfig& sensor,
                         const StrategyConfig& cfg) {
  GreedyInstance in;
  in.utilities = cluster_utilities(clusters, map, sensor, cfg);
  for (const FrontierCluster& c : clusters) {
    in.positions.push_back(map.frame().center_of(c.representative));
    in.keys.push_back(c.representative);
  }
  in.costs.resize(robots.size());
  for (std::size_t r = 0; r < robots.size(); ++r) {
    in.costs[r] = cluster_costs(clusters, robots[r], map);
  }
  return indices_to_assignment(
      greedy_assign_indices(std::move(in), cfg.lambda, cfg.discount_radius), clusters);
}

}  // namespace voxplore
