#pragma once

#include <cstdint>
#include <vector>

#include "geom.hpp"
#include "occupancy.hpp"

namespace voxplore {

/// A known-free voxel with at least one face-adjacent Unknown neighbor.
struct FrontierCell {
  VoxelKey key;
  std::int32_t unknown_neighbors = 0;  // in [1, 6]

  bool operator==(const FrontierCell& o) const = default;
};

/// Connected group of frontier cells (26-connectivity).
struct FrontierCluster {
  std::vector<FrontierCell> cells;  // lexicographically sorted
  Vec3 centroid;                    // world point: mean of member cell centers
  VoxelKey representative;          // member cell nearest the centroid
  std::int64_t size = 0;
};

struct FrontierOptions {
  /// Whether a neighbor outside the map cube counts as Unknown.
  /// Off by default: out-of-cube neighbors are ignored.
  bool outside_cube_is_unknown = false;
};

/// Finds every Free leaf voxel inside `bounds` whose face neighborhood
/// touches Unknown space. Pruned Free cubes are expanded virtually; only
/// their surface cells can qualify. Output is sorted by key.
std::vector<FrontierCell> detect_frontiers(const OccupancyOctree& map, const KeyBox& bounds,
                                           const FrontierOptions& opts = {});

/// Groups cells into 26-connected components, drops components smaller than
/// `min_cluster_size`, and orders the result by descending size (ties by the
/// smallest member key).
std::vector<FrontierCluster> cluster_frontiers(const std::vector<FrontierCell>& cells,
                                               std::int64_t min_cluster_size,
                                               const Frame& frame);

/// The member cell whose center is nearest the cluster centroid; ties go to
/// the lexicographically smallest key.
VoxelKey cluster_representative(const std::vector<FrontierCell>& cells);

}  // namespace voxplore
