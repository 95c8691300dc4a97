#pragma once

// Shared test utilities: independent oracles and small world builders. These
// deliberately re-derive results through different algorithms than the
// library code they check.

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "geom.hpp"
#include "occupancy.hpp"
#include "world.hpp"

namespace voxplore::testutil {

/// World with every voxel free (no outer walls), for raw ray-walk tests.
inline WorldGrid open_world(std::int32_t nx, std::int32_t ny, std::int32_t nz,
                            double resolution = 1.0) {
  WorldGrid w;
  w.nx = nx;
  w.ny = ny;
  w.nz = nz;
  w.resolution = resolution;
  w.occupied_cells.assign(static_cast<std::size_t>(w.voxel_count()), 0);
  w.fire_cells.assign(static_cast<std::size_t>(w.voxel_count()), 0);
  w.building_center_x = 0.5 * nx * resolution;
  w.building_center_y = 0.5 * ny * resolution;
  return w;
}

inline void set_occupied(WorldGrid& w, const VoxelKey& k, bool fire = false) {
  w.occupied_cells[w.index_of(k)] = 1;
  if (fire) w.fire_cells[w.index_of(k)] = 1;
}

struct OracleTrace {
  std::vector<VoxelKey> visited;
  std::optional<VoxelKey> hit;
};

/// Dense-sampling ray oracle. Samples the (perturbed, matching the traversal
/// contract) ray every 0.01 * resolution, maps samples to voxels, and closes
/// sampling gaps by bisection so that every boundary crossing appears in
/// order. Exact corner crossings (interval below 1e-12) expand in the
/// documented x, y, z priority order.
inline OracleTrace dense_ray_oracle(const WorldGrid& w, const Vec3& origin,
                                    const Vec3& direction, double max_range) {
  const double res = w.resolution;
  const double eps = 1e-9 * res;
  const Vec3 dir = direction.normalized();
  const Vec3 p0{origin.x + eps, origin.y + eps, origin.z + eps};

  const auto cell_at = [&](double t) {
    const Vec3 q = p0 + dir * t;
    return VoxelKey{
        static_cast<std::int32_t>(std::floor((q.x - w.origin.x) / res)),
        static_cast<std::int32_t>(std::floor((q.y - w.origin.y) / res)),
        static_cast<std::int32_t>(std::floor((q.z - w.origin.z) / res))};
  };

  OracleTrace out;
  bool stopped = false;
  const auto visit = [&](const VoxelKey& k) {
    if (stopped) return;
    if (!w.in_bounds(k)) {
      stopped = true;
      return;
    }
    out.visited.push_back(k);
    if (w.occupied(k)) {
      out.hit = k;
      stopped = true;
    }
  };

  const auto expand_tie = [&](VoxelKey from, const VoxelKey& to) {
    while (!(from == to) && !stopped) {
      if (from.x != to.x) {
        from.x += to.x > from.x ? 1 : -1;
      } else if (from.y != to.y) {
        from.y += to.y > from.y ? 1 : -1;
      } else {
        from.z += to.z > from.z ? 1 : -1;
      }
      visit(from);
    }
  };

  const auto refine = [&](auto&& self, double t_lo, const VoxelKey& lo, double t_hi,
                          const VoxelKey& hi) -> void {
    if (stopped || lo == hi) return;
    const std::int32_t gap =
        std::abs(hi.x - lo.x) + std::abs(hi.y - lo.y) + std::abs(hi.z - lo.z);
    if (gap == 1) {
      visit(hi);
      return;
    }
    if (t_hi - t_lo < 1e-12) {
      expand_tie(lo, hi);
      return;
    }
    const double t_mid = 0.5 * (t_lo + t_hi);
    const VoxelKey mid = cell_at(t_mid);
    self(self, t_lo, lo, t_mid, mid);
    if (!stopped && !(mid == hi)) self(self, t_mid, mid, t_hi, hi);
  };

  VoxelKey prev = cell_at(0.0);
  visit(prev);
  const double step = 0.01 * res;
  double t_prev = 0.0;
  while (!stopped && t_prev < max_range) {
    const double t = std::min(t_prev + step, max_range);
    const VoxelKey cell = cell_at(t);
    if (!(cell == prev)) refine(refine, t_prev, prev, t, cell);
    prev = cell;
    t_prev = t;
  }
  return out;
}

/// Independent reachability oracle: plain BFS over traversable voxels.
inline std::set<VoxelKey> flood_fill_oracle(const WorldGrid& w, const VoxelKey& start) {
  std::set<VoxelKey> seen;
  if (!w.traversable(start)) return seen;
  std::deque<VoxelKey> queue{start};
  seen.insert(start);
  while (!queue.empty()) {
    const VoxelKey k = queue.front();
    queue.pop_front();
    const VoxelKey neighbors[6] = {{k.x + 1, k.y, k.z}, {k.x - 1, k.y, k.z},
                                   {k.x, k.y + 1, k.z}, {k.x, k.y - 1, k.z},
                                   {k.x, k.y, k.z + 1}, {k.x, k.y, k.z - 1}};
    for (const VoxelKey& n : neighbors) {
      if (w.traversable(n) && seen.insert(n).second) queue.push_back(n);
    }
  }
  return seen;
}

/// Dense mirror of the octree used as an update/query oracle.
class DenseShadow {
 public:
  DenseShadow(std::int32_t side, LogOddsParams params = {})
      : side_(side), params_(params),
        observed_(static_cast<std::size_t>(side) * side * side, 0),
        log_odds_(static_cast<std::size_t>(side) * side * side, 0.0) {}

  bool in_cube(const VoxelKey& k) const {
    return k.x >= 0 && k.x < side_ && k.y >= 0 && k.y < side_ && k.z >= 0 && k.z < side_;
  }

  void update(const VoxelKey& k, bool hit) {
    const std::size_t i = index(k);
    observed_[i] = 1;
    const double delta = hit ? params_.l_hit : params_.l_miss;
    log_odds_[i] = std::min(params_.l_max, std::max(params_.l_min, log_odds_[i] + delta));
  }

  VoxelState state(const VoxelKey& k) const {
    const std::size_t i = index(k);
    if (!observed_[i]) return VoxelState::Unknown;
    return log_odds_[i] > params_.occ_threshold ? VoxelState::Occupied : VoxelState::Free;
  }

  std::int32_t side() const { return side_; }

 private:
  std::size_t index(const VoxelKey& k) const {
    return (static_cast<std::size_t>(k.z) * side_ + k.y) * side_ + k.x;
  }

  std::int32_t side_;
  LogOddsParams params_;
  std::vector<std::uint8_t> observed_;
  std::vector<double> log_odds_;
};

}  // namespace voxplore::testutil
