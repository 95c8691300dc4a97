#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geom.hpp"
#include "rng.hpp"

namespace voxplore {

enum class WorldKind { EmptyBox, RoomsAndCorridors, BuildingShell };

WorldKind world_kind_from_string(const std::string& s);
const char* world_kind_to_string(WorldKind k);

/// Ground-truth environment. Immutable after generation/load; simulation
/// workers may read it concurrently.
struct WorldGrid {
  std::int32_t nx = 0;
  std::int32_t ny = 0;
  std::int32_t nz = 0;
  double resolution = 1.0;
  Vec3 origin;
  double building_center_x = 0.0;
  double building_center_y = 0.0;

  std::vector<std::uint8_t> occupied_cells;
  std::vector<std::uint8_t> fire_cells;

  std::size_t index_of(const VoxelKey& k) const {
    return (static_cast<std::size_t>(k.z) * ny + k.y) * nx + k.x;
  }
  bool in_bounds(const VoxelKey& k) const {
    return k.x >= 0 && k.x < nx && k.y >= 0 && k.y < ny && k.z >= 0 && k.z < nz;
  }
  bool occupied(const VoxelKey& k) const { return occupied_cells[index_of(k)] != 0; }
  bool fire(const VoxelKey& k) const { return fire_cells[index_of(k)] != 0; }
  bool traversable(const VoxelKey& k) const { return in_bounds(k) && !occupied(k); }

  Frame frame() const { return Frame{origin, resolution}; }
  std::int64_t voxel_count() const {
    return static_cast<std::int64_t>(nx) * ny * nz;
  }
  std::int64_t traversable_count() const;
  std::vector<VoxelKey> fire_voxels() const;

  /// Checks structural invariants (positive dims, fire voxels exposed to
  /// traversable space). Throws ValidationError on violation.
  void validate() const;
};

struct Pose {
  Vec3 position;
  double yaw = 0.0;  // radians, [0, 2pi)
};

struct SensorConfig {
  double max_range = 4.0;
  std::int32_t horizontal_rays = 16;
  std::int32_t vertical_rays = 5;
  double vertical_fov = 2.6179938779914944;  // 150 degrees
  double fire_detect_range = 4.0;
  double range_noise_sigma = 0.0;

  void validate() const;
};

struct Beam {
  Vec3 direction;  // unit vector
  // Measured distance in (0, max_range]. Misses report max_range exactly.
  // Hits report the middle of the beam's chord through the hit voxel, which
  // keeps replayed integration inside that voxel.
  double range = 0.0;
  bool hit = false;
};

struct Scan {
  Pose origin;
  std::vector<Beam> beams;
  std::vector<VoxelKey> fire_observations;  // deduplicated, lexicographically sorted
};

/// Result of a single ray walk through the grid.
struct RayTrace {
  std::vector<VoxelKey> visited;       // face-adjacent, origin voxel first
  std::optional<VoxelKey> hit;         // first occupied voxel, if any
  double t_hit = 0.0;                  // ray distance at which `hit` was entered
};

WorldGrid generate_world(WorldKind kind, std::int32_t nx, std::int32_t ny,
                         std::int32_t nz, std::uint64_t seed, std::int32_t fire_count,
                         double resolution = 1.0);

/// Walks voxels from `origin` along `direction` (need not be normalized;
/// it is normalized internally) up to `max_range` meters. Stops at the first
/// occupied voxel or on leaving the grid.
RayTrace cast_ray(const WorldGrid& world, const Vec3& origin, const Vec3& direction,
                  double max_range);

/// Multi-beam range scan from `pose`. Beams are ordered elevation-major:
/// for each of `vertical_rays` elevations (evenly spaced over the vertical
/// fov, endpoints included; a single ray looks straight ahead), all
/// `horizontal_rays` azimuths 2*pi*k/h offset by the pose yaw.
/// `noise` enables Gaussian range noise on hit beams when
/// cfg.range_noise_sigma > 0; pass nullptr for the exact sensor.
Scan sense(const WorldGrid& world, const Pose& pose, const SensorConfig& cfg,
           Rng* noise = nullptr);

void save_world(const WorldGrid& world, std::ostream& out);
void save_world_file(const WorldGrid& world, const std::string& path);
WorldGrid load_world(std::istream& in);
WorldGrid load_world_file(const std::string& path);

}  // namespace voxplore
