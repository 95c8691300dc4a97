#include "planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <tuple>

#include "errors.hpp"

namespace voxplore {

void PotentialFieldConfig::validate() const {
  if (!(eta > 0.0 && d0 > 0.0 && attract_gain > 0.0 && step > 0.0 && clearance > 0.0)) {
    raise(Err::InvalidParams, "potential field parameters must be positive");
  }
  if (max_iters < 1) raise(Err::InvalidParams, "max_iters must be >= 1");
  if (!(clearance < d0)) raise(Err::InvalidParams, "clearance must be smaller than d0");
}

void EllipseSpec::validate() const {
  if (!(semi_major >= semi_minor && semi_minor > 0.0)) {
    raise(Err::InvalidParams, "ellipse needs a >= b > 0");
  }
  if (count < 3) raise(Err::InvalidParams, "ellipse needs at least 3 waypoints");
}

namespace {

bool is_free(const OccupancyOctree& map, const VoxelKey& k) {
  return map.in_cube(k) && map.state_of(k) == VoxelState::Free;
}

std::int64_t manhattan(const VoxelKey& a, const VoxelKey& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

}  // namespace

Path plan_path(const OccupancyOctree& map, const VoxelKey& start, const VoxelKey& goal) {
  if (!is_free(map, start)) raise(Err::StartNotFree, "path start voxel is not Free");
  if (!is_free(map, goal)) raise(Err::GoalNotFree, "path goal voxel is not Free");

  struct OpenEntry {
    std::int64_t f;
    std::int64_t seq;
    VoxelKey key;
    bool operator>(const OpenEntry& o) const {
      return f != o.f ? f > o.f : seq > o.seq;
    }
  };

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;
  std::unordered_map<VoxelKey, std::int64_t, VoxelKeyHash> g;
  std::unordered_map<VoxelKey, VoxelKey, VoxelKeyHash> parent;
  std::int64_t seq = 0;

  g[start] = 0;
  open.push({manhattan(start, goal), seq++, start});

  bool found = false;
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const auto git = g.find(top.key);
    if (git == g.end() || top.f - manhattan(top.key, goal) > git->second) continue;
    if (top.key == goal) {
      found = true;
      break;
    }
    const std::int64_t g_here = git->second;
    for (const VoxelKey& d : kFaceNeighbors) {
      const VoxelKey n = top.key + d;
      if (!is_free(map, n)) continue;
      const std::int64_t g_new = g_here + 1;
      const auto it = g.find(n);
      if (it != g.end() && it->second <= g_new) continue;
      g[n] = g_new;
      parent[n] = top.key;
      open.push({g_new + manhattan(n, goal), seq++, n});
    }
  }
  if (!found) raise(Err::NoPath, "goal is unreachable through Free space");

  std::vector<VoxelKey> keys;
  for (VoxelKey k = goal;; k = parent.at(k)) {
    keys.push_back(k);
    if (k == start) break;
  }
  std::reverse(keys.begin(), keys.end());

  const Frame f = map.frame();
  Path path;
  path.waypoints.reserve(keys.size());
  for (const VoxelKey& k : keys) path.waypoints.push_back(f.center_of(k));
  path.length_m = static_cast<double>(keys.size() - 1) * map.resolution();
  return path;
}

std::unordered_map<VoxelKey, std::int32_t, VoxelKeyHash> distance_field(
    const OccupancyOctree& map, const VoxelKey& start) {
  std::unordered_map<VoxelKey, std::int32_t, VoxelKeyHash> dist;
  if (!is_free(map, start)) return dist;
  std::deque<VoxelKey> queue;
  dist[start] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    const VoxelKey k = queue.front();
    queue.pop_front();
    const std::int32_t d = dist[k];
    for (const VoxelKey& off : kFaceNeighbors) {
      const VoxelKey n = k + off;
      if (!is_free(map, n) || dist.count(n)) continue;
      dist[n] = d + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

std::vector<Vec3> ellipse_targets(const EllipseSpec& spec) {
  spec.validate();
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::vector<Vec3> out;
  out.reserve(spec.count);
  for (std::int32_t k = 0; k < spec.count; ++k) {
    const double theta = kTwoPi * k / spec.count;
    out.push_back({spec.center_x + spec.semi_major * std::cos(theta),
                   spec.center_y + spec.semi_minor * std::sin(theta), spec.altitude});
  }
  return out;
}

Vec3 repulsive_force(const Vec3& point, const OccupancyOctree& map,
                     const PotentialFieldConfig& cfg) {
  const Frame f = map.frame();
  const double res = map.resolution();
  const std::int32_t radius = static_cast<std::int32_t>(std::ceil(cfg.d0 / res)) + 1;
  const VoxelKey at = f.key_of(point);

  Vec3 force;
  for (std::int32_t x = at.x - radius; x <= at.x + radius; ++x) {
    for (std::int32_t y = at.y - radius; y <= at.y + radius; ++y) {
      for (std::int32_t z = at.z - radius; z <= at.z + radius; ++z) {
        const VoxelKey k{x, y, z};
        if (!map.in_cube(k) || map.state_of(k) != VoxelState::Occupied) continue;
        const Vec3 away = point - f.center_of(k);
        const double d = away.norm();
        if (d < 1e-9) {
          raise(Err::DegenerateDistance, "point coincides with an obstacle center");
        }
        if (d >= cfg.d0) continue;
        const double magnitude = cfg.eta * (1.0 / d - 1.0 / cfg.d0) / (d * d);
        force += away * (magnitude / d);
      }
    }
  }
  return force;
}

namespace {

bool clearance_ok(const Vec3& point, const OccupancyOctree& map, double clearance) {
  const Frame f = map.frame();
  const double res = map.resolution();
  const std::int32_t radius = static_cast<std::int32_t>(std::ceil(clearance / res)) + 1;
  const VoxelKey at = f.key_of(point);
  for (std::int32_t x = at.x - radius; x <= at.x + radius; ++x) {
    for (std::int32_t y = at.y - radius; y <= at.y + radius; ++y) {
      for (std::int32_t z = at.z - radius; z <= at.z + radius; ++z) {
        const VoxelKey k{x, y, z};
        if (!map.in_cube(k) || map.state_of(k) != VoxelState::Occupied) continue;
        if ((point - f.center_of(k)).norm() < clearance) return false;
      }
    }
  }
  return true;
}

}  // namespace

Path validate_and_correct(const Path& path, const OccupancyOctree& map,
                          const PotentialFieldConfig& cfg) {
  cfg.validate();
  if (path.waypoints.empty()) raise(Err::InvalidArgument, "path must be non-empty");

  Path out = path;
  for (std::size_t i = 1; i + 1 < out.waypoints.size(); ++i) {
    const Vec3 original = path.waypoints[i];
    if (clearance_ok(original, map, cfg.clearance)) continue;

    Vec3 cur = original;
    bool satisfied = false;
    for (std::int32_t iter = 0; iter < cfg.max_iters; ++iter) {
      Vec3 force;
      try {
        force = repulsive_force(cur, map, cfg);
      } catch (const Error& e) {
        if (e.code() != Err::DegenerateDistance) throw;
        break;  // sitting on an obstacle center, nothing sensible to do
      }
      force += (original - cur) * cfg.attract_gain;
      const double n = force.norm();
      if (n > 1e-12) cur += force * (cfg.step / n);
      if (clearance_ok(cur, map, cfg.clearance)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) {
      raise(Err::CorrectionFailed,
            "waypoint " + std::to_string(i) + " still violates clearance after " +
                std::to_string(cfg.max_iters) + " iterations");
    }
    out.waypoints[i] = cur;
  }
  return out;
}

}  // namespace voxplore
