#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "geom.hpp"
#include "occupancy.hpp"

namespace voxplore {

/// Planned trajectory. As produced by plan_path, waypoints are face-adjacent
/// voxel centers and length_m = (count - 1) * resolution. After potential
/// field correction the interior waypoints may leave the lattice; length_m
/// keeps the planned value.
struct Path {
  std::vector<Vec3> waypoints;
  double length_m = 0.0;
};

struct PotentialFieldConfig {
  double eta = 1.0;           // repulsive gain
  double d0 = 2.0;            // repulsive influence radius, meters
  double attract_gain = 1.0;  // pull toward the original waypoint
  double step = 0.25;         // displacement per iteration, meters
  std::int32_t max_iters = 50;
  double clearance = 1.0;     // required distance to Occupied voxel centers, meters

  void validate() const;
};

struct EllipseSpec {
  double center_x = 0.0;
  double center_y = 0.0;
  double semi_major = 1.0;  // a >= b > 0
  double semi_minor = 1.0;
  double altitude = 0.0;
  std::int32_t count = 8;   // N >= 3

  void validate() const;
};

/// Shortest path over Free voxels under 6-connectivity (A* with Manhattan
/// heuristic; unit moves). Unknown and Occupied voxels are non-traversable.
/// Deterministic: neighbors expand in the order +x,-x,+y,-y,+z,-z and open
/// set ties resolve by insertion order.
Path plan_path(const OccupancyOctree& map, const VoxelKey& start, const VoxelKey& goal);

/// BFS move-count distances from `start` to every Free voxel reachable
/// through Free space. Used for reachability checks and path costs; distances
/// agree with plan_path move counts.
std::unordered_map<VoxelKey, std::int32_t, VoxelKeyHash> distance_field(
    const OccupancyOctree& map, const VoxelKey& start);

/// N counter-clockwise perimeter points p_k = center + (a cos(2 pi k / N),
/// b sin(2 pi k / N)) at the given altitude.
std::vector<Vec3> ellipse_targets(const EllipseSpec& spec);

/// Khatib-form repulsive force at `point`: obstacles within d0 contribute
/// eta * (1/d - 1/d0) / d^2 along the unit vector away from the obstacle.
Vec3 repulsive_force(const Vec3& point, const OccupancyOctree& map,
                     const PotentialFieldConfig& cfg);

/// Pushes interior waypoints that violate the clearance requirement along the
/// combined repulsive + attractive field until they satisfy it. First and
/// last waypoints never move and the waypoint count is preserved. Throws
/// CorrectionFailed when a waypoint still violates clearance after max_iters.
Path validate_and_correct(const Path& path, const OccupancyOctree& map,
                          const PotentialFieldConfig& cfg);

}  // namespace voxplore
