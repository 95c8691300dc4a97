#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "geom.hpp"

namespace voxplore {

enum class RayStep { Continue, Stop };

namespace raydetail {

// Shared crossing formula: distance at which the perturbed ray meets the
// world-space plane of lattice index `idx` on axis `a`. Every traversal
// consumer must use this exact expression so replayed beams agree
// bit-for-bit.
inline double crossing_t(std::int32_t idx, double frame_origin, double res, double p,
                         double d) {
  return ((frame_origin + idx * res) - p) / d;
}

}  // namespace raydetail

/// Parametric voxel traversal (Amanatides & Woo). Visits the voxel containing
/// the ray origin first (t = 0), then every boundary crossing in order until
/// the next crossing would exceed `max_t`. Steps exactly one axis at a time,
/// so consecutive visits are face-adjacent.
///
/// Degenerate corner/edge crossings: the origin is perturbed by
/// +1e-9 * resolution on each axis before traversal, and any crossing that is
/// still exactly tied is resolved in fixed axis order x, y, z. Both rules are
/// part of the traversal contract; callers that replay a beam (the map
/// integrator does) rely on getting the identical voxel sequence.
///
/// `visit(key, t_entry)` returns RayStep::Stop to end the walk early.
template <typename F>
void traverse_ray(const Vec3& origin, const Vec3& direction, double max_t,
                  const Frame& frame, F&& visit) {
  const double res = frame.resolution;
  const double eps = 1e-9 * res;
  const double p[3] = {origin.x + eps, origin.y + eps, origin.z + eps};
  const double o[3] = {frame.origin.x, frame.origin.y, frame.origin.z};
  const double d[3] = {direction.x, direction.y, direction.z};

  std::array<std::int32_t, 3> cell{};
  std::array<std::int32_t, 3> step{};
  std::array<std::int32_t, 3> next_idx{};
  std::array<double, 3> t_max{};
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (int a = 0; a < 3; ++a) {
    cell[a] = static_cast<std::int32_t>(std::floor((p[a] - o[a]) / res));
    if (d[a] > 0.0) {
      step[a] = 1;
      next_idx[a] = cell[a] + 1;
      t_max[a] = raydetail::crossing_t(next_idx[a], o[a], res, p[a], d[a]);
    } else if (d[a] < 0.0) {
      step[a] = -1;
      next_idx[a] = cell[a];
      t_max[a] = raydetail::crossing_t(next_idx[a], o[a], res, p[a], d[a]);
    } else {
      step[a] = 0;
      next_idx[a] = cell[a];
      t_max[a] = kInf;
    }
  }

  if (visit(VoxelKey{cell[0], cell[1], cell[2]}, 0.0) == RayStep::Stop) return;

  while (true) {
    int axis = t_max[0] <= t_max[1] ? 0 : 1;
    if (t_max[2] < t_max[axis]) axis = 2;
    const double t = t_max[axis];
    if (!(t <= max_t)) return;
    cell[axis] += step[axis];
    if (visit(VoxelKey{cell[0], cell[1], cell[2]}, t) == RayStep::Stop) return;
    next_idx[axis] += step[axis];
    t_max[axis] = raydetail::crossing_t(next_idx[axis], o[axis], res, p[axis], d[axis]);
  }
}

/// Ray distance at which the (perturbed) ray leaves voxel `cell`. Agrees
/// bit-for-bit with the crossing distances traverse_ray produces.
inline double ray_exit_t(const VoxelKey& cell, const Vec3& origin, const Vec3& direction,
                         const Frame& frame) {
  const double res = frame.resolution;
  const double eps = 1e-9 * res;
  const double p[3] = {origin.x + eps, origin.y + eps, origin.z + eps};
  const double o[3] = {frame.origin.x, frame.origin.y, frame.origin.z};
  const double d[3] = {direction.x, direction.y, direction.z};
  const std::int32_t c[3] = {cell.x, cell.y, cell.z};

  double exit = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) continue;
    const std::int32_t idx = d[a] > 0.0 ? c[a] + 1 : c[a];
    exit = std::min(exit, raydetail::crossing_t(idx, o[a], res, p[a], d[a]));
  }
  return exit;
}

}  // namespace voxplore
