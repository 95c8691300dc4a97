#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>

#include "geom.hpp"
#include "world.hpp"

namespace voxplore {

enum class VoxelState { Free, Occupied, Unknown };

inline const char* voxel_state_name(VoxelState s) {
  switch (s) {
    case VoxelState::Free: return "free";
    case VoxelState::Occupied: return "occupied";
    case VoxelState::Unknown: return "unknown";
  }
  return "?";
}

/// Log-odds update constants. Defaults are the canonical occupancy-mapping
/// values; all of them are scenario-configurable.
struct LogOddsParams {
  double l_hit = 0.85;
  double l_miss = -0.4;
  double l_min = -2.0;
  double l_max = 3.5;
  double occ_threshold = 0.0;

  void validate() const;
};

struct LeafCube {
  VoxelKey min;    // lowest corner of the cube, in leaf coordinates
  std::int32_t size = 1;  // edge length in leaf voxels (power of two)
  double log_odds = 0.0;
  VoxelState state = VoxelState::Unknown;
};

struct MemoryStats {
  std::int64_t node_count = 0;
  std::int64_t leaf_count = 0;
  std::int64_t estimated_bytes = 0;
};

/// Probabilistic occupancy octree over a cube of 2^max_depth leaf voxels per
/// axis, anchored at key (0,0,0) with the given resolution. A voxel that has
/// never been observed has no node at all and queries Unknown; observed
/// voxels hold a clamped log-odds value. Eight equal-valued sibling leaves
/// collapse into their parent under prune() without changing any query.
///
/// Writers (update_voxel, integrate_scan, prune) require exclusive access;
/// state_of and leaf iteration may run concurrently with each other.
class OccupancyOctree {
 public:
  OccupancyOctree(double resolution, std::int32_t max_depth, LogOddsParams params = {});

  OccupancyOctree(OccupancyOctree&&) noexcept = default;
  OccupancyOctree& operator=(OccupancyOctree&&) noexcept = default;

  double resolution() const { return resolution_; }
  std::int32_t max_depth() const { return max_depth_; }
  std::int32_t side() const { return 1 << max_depth_; }
  const LogOddsParams& params() const { return params_; }
  Frame frame() const { return Frame{Vec3{}, resolution_}; }

  bool in_cube(const VoxelKey& k) const {
    const std::int32_t s = side();
    return k.x >= 0 && k.x < s && k.y >= 0 && k.y < s && k.z >= 0 && k.z < s;
  }

  /// Applies one hit/miss observation and returns the new clamped log-odds.
  double update_voxel(const VoxelKey& key, bool hit);

  /// Integrates a scan: every voxel a beam passes through gets a miss, the
  /// final voxel of a hit beam gets a hit. A voxel touched by several beams
  /// of the same scan is updated once, hit winning over miss. Beams are
  /// clipped to the map cube. Returns (miss_updates, hit_updates).
  std::pair<std::int64_t, std::int64_t> integrate_scan(const Scan& scan);

  VoxelState state_of(const VoxelKey& key) const;

  /// Log-odds at `key`; `observed` (optional) reports whether any update has
  /// ever reached it. Unobserved voxels read as 0.
  double log_odds_of(const VoxelKey& key, bool* observed = nullptr) const;

  /// Collapses equal-valued sibling leaves bottom-up to fixpoint.
  /// Returns the number of nodes removed.
  std::int64_t prune();

  /// Visits every leaf cube. Cubes partition the observed region exactly;
  /// unobserved space is not visited.
  void for_each_leaf(const std::function<void(const LeafCube&)>& fn) const;

  MemoryStats memory_stats() const;

  void save(std::ostream& out) const;
  static OccupancyOctree load(std::istream& in, LogOddsParams params = {});
  void save_file(const std::string& path) const;
  static OccupancyOctree load_file(const std::string& path, LogOddsParams params = {});

  /// Documented per-node size used by memory_stats().
  static constexpr std::int64_t kNodeBytes = 80;

 private:
  struct Node {
    std::array<std::unique_ptr<Node>, 8> child;
    double log_odds = 0.0;

    bool is_leaf() const {
      for (const auto& c : child) {
        if (c) return false;
      }
      return true;
    }
  };

  void check_key(const VoxelKey& key) const;
  int child_index(const VoxelKey& key, std::int32_t depth) const;
  Node* leaf_for_update(const VoxelKey& key);
  void set_leaf_cube(const VoxelKey& min, std::int32_t size, double log_odds);
  VoxelState classify(double log_odds) const {
    return log_odds > params_.occ_threshold ? VoxelState::Occupied : VoxelState::Free;
  }

  double resolution_;
  std::int32_t max_depth_;
  LogOddsParams params_;
  std::unique_ptr<Node> root_;
};

}  // namespace voxplore
