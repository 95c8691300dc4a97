#include "world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "raycast.hpp"

namespace voxplore {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Rect {
  std::int32_t x0, x1, y0, y1;  // inclusive footprint cells
  std::int32_t width() const { return x1 - x0 + 1; }
  std::int32_t height() const { return y1 - y0 + 1; }
};

void fill_column(WorldGrid& w, std::int32_t x, std::int32_t y, bool value) {
  for (std::int32_t z = 1; z < w.nz - 1; ++z) {
    w.occupied_cells[w.index_of({x, y, z})] = value ? 1 : 0;
  }
}

// Recursive binary partition of the footprint into rooms. Every wall gets a
// two-cell doorway, so the interior stays connected by construction. Walls
// span the full interior height.
void split_rooms(WorldGrid& w, const Rect& r, Rng& rng) {
  constexpr std::int32_t kMinRoom = 3;
  const bool can_x = r.width() >= 2 * kMinRoom + 1;
  const bool can_y = r.height() >= 2 * kMinRoom + 1;
  if (!can_x && !can_y) return;

  bool split_x;
  if (can_x && can_y) {
    split_x = r.width() != r.height() ? r.width() > r.height() : rng.next_below(2) == 0;
  } else {
    split_x = can_x;
  }

  if (split_x) {
    const std::int32_t wall_x =
        static_cast<std::int32_t>(rng.uniform_int(r.x0 + kMinRoom, r.x1 - kMinRoom));
    for (std::int32_t y = r.y0; y <= r.y1; ++y) fill_column(w, wall_x, y, true);
    const std::int32_t door =
        static_cast<std::int32_t>(rng.uniform_int(r.y0, r.y1 - 1));
    fill_column(w, wall_x, door, false);
    fill_column(w, wall_x, door + 1, false);
    split_rooms(w, {r.x0, wall_x - 1, r.y0, r.y1}, rng);
    split_rooms(w, {wall_x + 1, r.x1, r.y0, r.y1}, rng);
  } else {
    const std::int32_t wall_y =
        static_cast<std::int32_t>(rng.uniform_int(r.y0 + kMinRoom, r.y1 - kMinRoom));
    for (std::int32_t x = r.x0; x <= r.x1; ++x) fill_column(w, x, wall_y, true);
    const std::int32_t door =
        static_cast<std::int32_t>(rng.uniform_int(r.x0, r.x1 - 1));
    fill_column(w, door, wall_y, false);
    fill_column(w, door + 1, wall_y, false);
    split_rooms(w, {r.x0, r.x1, r.y0, wall_y - 1}, rng);
    split_rooms(w, {r.x0, r.x1, wall_y + 1, r.y1}, rng);
  }
}

void build_building_shell(WorldGrid& w, Rng& rng) {
  const std::int32_t margin =
      std::max<std::int32_t>(3, std::min(w.nx, w.ny) / 5);
  const std::int32_t bx0 = margin, bx1 = w.nx - 1 - margin;
  const std::int32_t by0 = margin, by1 = w.ny - 1 - margin;
  if (bx1 - bx0 < 2 || by1 - by0 < 2) return;  // too small for a shell, leave box empty

  for (std::int32_t x = bx0; x <= bx1; ++x) {
    fill_column(w, x, by0, true);
    fill_column(w, x, by1, true);
  }
  for (std::int32_t y = by0; y <= by1; ++y) {
    fill_column(w, bx0, y, true);
    fill_column(w, bx1, y, true);
  }

  // Two-cell entrance on a random side.
  const int side = static_cast<int>(rng.next_below(4));
  if (side == 0 || side == 1) {
    const std::int32_t x = side == 0 ? bx0 : bx1;
    const std::int32_t door =
        static_cast<std::int32_t>(rng.uniform_int(by0 + 1, by1 - 2));
    fill_column(w, x, door, false);
    fill_column(w, x, door + 1, false);
  } else {
    const std::int32_t y = side == 2 ? by0 : by1;
    const std::int32_t door =
        static_cast<std::int32_t>(rng.uniform_int(bx0 + 1, bx1 - 2));
    fill_column(w, door, y, false);
    fill_column(w, door + 1, y, false);
  }

  // Sparse full-height pillars inside the building. A pillar is only placed
  // when its whole 8-neighborhood is free, which keeps the floor connected.
  const std::int32_t ix0 = bx0 + 1, ix1 = bx1 - 1, iy0 = by0 + 1, iy1 = by1 - 1;
  const std::int64_t area =
      static_cast<std::int64_t>(ix1 - ix0 + 1) * (iy1 - iy0 + 1);
  std::int64_t pillars = area / 48;
  std::int32_t attempts = 0;
  while (pillars > 0 && attempts < 200) {
    ++attempts;
    const std::int32_t px = static_cast<std::int32_t>(rng.uniform_int(ix0, ix1));
    const std::int32_t py = static_cast<std::int32_t>(rng.uniform_int(iy0, iy1));
    bool clear = true;
    for (std::int32_t dx = -1; dx <= 1 && clear; ++dx) {
      for (std::int32_t dy = -1; dy <= 1 && clear; ++dy) {
        const VoxelKey k{px + dx, py + dy, 1};
        if (!w.in_bounds(k) || w.occupied(k)) clear = false;
      }
    }
    if (!clear) continue;
    fill_column(w, px, py, true);
    --pillars;
  }

  const Frame f = w.frame();
  w.building_center_x = f.origin.x + 0.5 * (bx0 + bx1 + 1) * f.resolution;
  w.building_center_y = f.origin.y + 0.5 * (by0 + by1 + 1) * f.resolution;
}

std::vector<VoxelKey> traversable_flood(const WorldGrid& w, const VoxelKey& start) {
  std::vector<std::uint8_t> seen(w.voxel_count(), 0);
  std::deque<VoxelKey> queue;
  std::vector<VoxelKey> out;
  if (!w.traversable(start)) return out;
  seen[w.index_of(start)] = 1;
  queue.push_back(start);
  while (!queue.empty()) {
    const VoxelKey k = queue.front();
    queue.pop_front();
    out.push_back(k);
    for (const VoxelKey& d : kFaceNeighbors) {
      const VoxelKey n = k + d;
      if (!w.traversable(n)) continue;
      auto& mark = seen[w.index_of(n)];
      if (mark) continue;
      mark = 1;
      queue.push_back(n);
    }
  }
  return out;
}

void place_fire(WorldGrid& w, std::int32_t fire_count, Rng& rng) {
  if (fire_count == 0) return;
  std::vector<VoxelKey> candidates;
  for (std::int32_t x = 0; x < w.nx; ++x) {
    for (std::int32_t y = 0; y < w.ny; ++y) {
      for (std::int32_t z = 0; z < w.nz; ++z) {
        const VoxelKey k{x, y, z};
        if (!w.occupied(k)) continue;
        bool exposed = false;
        for (const VoxelKey& d : kFaceNeighbors) {
          if (w.traversable(k + d)) {
            exposed = true;
            break;
          }
        }
        if (exposed) candidates.push_back(k);
      }
    }
  }
  if (static_cast<std::size_t>(fire_count) > candidates.size()) {
    raise(Err::InvalidArgument,
          "fire_count " + std::to_string(fire_count) + " exceeds the " +
              std::to_string(candidates.size()) + " placeable faces");
  }
  // Partial Fisher-Yates over the lexicographically sorted candidate list.
  for (std::int32_t i = 0; i < fire_count; ++i) {
    const std::size_t j = i + rng.next_below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
    w.fire_cells[w.index_of(candidates[i])] = 1;
  }
}

}  // namespace

WorldKind world_kind_from_string(const std::string& s) {
  if (s == "empty_box") return WorldKind::EmptyBox;
  if (s == "rooms_and_corridors") return WorldKind::RoomsAndCorridors;
  if (s == "building_shell") return WorldKind::BuildingShell;
  raise(Err::InvalidArgument, "unknown world kind '" + s + "'");
}

const char* world_kind_to_string(WorldKind k) {
  switch (k) {
    case WorldKind::EmptyBox: return "empty_box";
    case WorldKind::RoomsAndCorridors: return "rooms_and_corridors";
    case WorldKind::BuildingShell: return "building_shell";
  }
  return "?";
}

std::int64_t WorldGrid::traversable_count() const {
  std::int64_t n = 0;
  for (const std::uint8_t o : occupied_cells) n += o == 0 ? 1 : 0;
  return n;
}

std::vector<VoxelKey> WorldGrid::fire_voxels() const {
  std::vector<VoxelKey> out;
  for (std::int32_t x = 0; x < nx; ++x) {
    for (std::int32_t y = 0; y < ny; ++y) {
      for (std::int32_t z = 0; z < nz; ++z) {
        if (fire({x, y, z})) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

void WorldGrid::validate() const {
  if (nx <= 0 || ny <= 0 || nz <= 0) raise(Err::ValidationError, "dims must be positive");
  if (!(resolution > 0.0)) raise(Err::ValidationError, "resolution must be positive");
  const std::size_t n = static_cast<std::size_t>(voxel_count());
  if (occupied_cells.size() != n || fire_cells.size() != n) {
    raise(Err::ValidationError, "cell storage does not match dims");
  }
  for (std::int32_t x = 0; x < nx; ++x) {
    for (std::int32_t y = 0; y < ny; ++y) {
      for (std::int32_t z = 0; z < nz; ++z) {
        const VoxelKey k{x, y, z};
        if (!fire(k)) continue;
        if (!occupied(k)) {
          raise(Err::ValidationError, "fire voxel is not an obstacle surface");
        }
        bool exposed = false;
        for (const VoxelKey& d : kFaceNeighbors) {
          if (traversable(k + d)) exposed = true;
        }
        if (!exposed) {
          raise(Err::ValidationError, "fire voxel has no traversable face neighbor");
        }
      }
    }
  }
}

void SensorConfig::validate() const {
  if (!(max_range > 0.0)) raise(Err::InvalidParams, "sensor max_range must be positive");
  if (horizontal_rays < 1 || vertical_rays < 1) {
    raise(Err::InvalidParams, "sensor ray counts must be >= 1");
  }
  if (!(vertical_fov >= 0.0)) raise(Err::InvalidParams, "vertical_fov must be >= 0");
  if (fire_detect_range > max_range) {
    raise(Err::InvalidParams, "fire_detect_range must not exceed max_range");
  }
  if (range_noise_sigma < 0.0) raise(Err::InvalidParams, "range_noise_sigma must be >= 0");
}

WorldGrid generate_world(WorldKind kind, std::int32_t nx, std::int32_t ny,
                         std::int32_t nz, std::uint64_t seed, std::int32_t fire_count,
                         double resolution) {
  if (nx < 4 || ny < 4 || nz < 4) {
    raise(Err::InvalidDims, "every axis must be >= 4 voxels, got " + std::to_string(nx) +
                                "x" + std::to_string(ny) + "x" + std::to_string(nz));
  }
  if (fire_count < 0) raise(Err::InvalidArgument, "fire_count must be >= 0");
  if (!(resolution > 0.0)) raise(Err::InvalidArgument, "resolution must be positive");

  WorldGrid w;
  w.nx = nx;
  w.ny = ny;
  w.nz = nz;
  w.resolution = resolution;
  w.occupied_cells.assign(static_cast<std::size_t>(w.voxel_count()), 0);
  w.fire_cells.assign(static_cast<std::size_t>(w.voxel_count()), 0);
  w.building_center_x = 0.5 * nx * w.resolution;
  w.building_center_y = 0.5 * ny * w.resolution;

  // Watertight outer walls.
  for (std::int32_t x = 0; x < nx; ++x) {
    for (std::int32_t y = 0; y < ny; ++y) {
      for (std::int32_t z = 0; z < nz; ++z) {
        if (x == 0 || y == 0 || z == 0 || x == nx - 1 || y == ny - 1 || z == nz - 1) {
          w.occupied_cells[w.index_of({x, y, z})] = 1;
        }
      }
    }
  }

  Rng base(seed);
  Rng layout = base.stream("layout");
  switch (kind) {
    case WorldKind::EmptyBox:
      break;
    case WorldKind::RoomsAndCorridors:
      split_rooms(w, {1, nx - 2, 1, ny - 2}, layout);
      break;
    case WorldKind::BuildingShell:
      build_building_shell(w, layout);
      break;
  }

  // The partition/shell builders cannot disconnect the interior; verify anyway
  // so a future generator change cannot ship a split world.
  VoxelKey start{0, 0, 0};
  bool found = false;
  for (std::int32_t x = 1; x < nx - 1 && !found; ++x) {
    for (std::int32_t y = 1; y < ny - 1 && !found; ++y) {
      for (std::int32_t z = 1; z < nz - 1 && !found; ++z) {
        if (w.traversable({x, y, z})) {
          start = {x, y, z};
          found = true;
        }
      }
    }
  }
  if (!found) raise(Err::InvalidDims, "world has no traversable interior");
  if (static_cast<std::int64_t>(traversable_flood(w, start).size()) != w.traversable_count()) {
    raise(Err::ValidationError, "generated interior is not connected");
  }

  Rng fire_rng = base.stream("fire");
  place_fire(w, fire_count, fire_rng);
  w.validate();
  return w;
}

RayTrace cast_ray(const WorldGrid& world, const Vec3& origin, const Vec3& direction,
                  double max_range) {
  const Frame f = world.frame();
  if (!world.in_bounds(f.key_of(origin))) {
    raise(Err::OriginOutOfBounds, "ray origin is outside the world");
  }
  const double norm = direction.norm();
  if (!(norm > 0.0)) raise(Err::InvalidArgument, "ray direction must be non-zero");
  const Vec3 dir = direction / norm;

  RayTrace trace;
  traverse_ray(origin, dir, max_range, f, [&](const VoxelKey& k, double t) {
    if (!world.in_bounds(k)) return RayStep::Stop;
    trace.visited.push_back(k);
    if (world.occupied(k)) {
      trace.hit = k;
      trace.t_hit = t;
      return RayStep::Stop;
    }
    return RayStep::Continue;
  });
  return trace;
}

Scan sense(const WorldGrid& world, const Pose& pose, const SensorConfig& cfg, Rng* noise) {
  cfg.validate();
  const Frame f = world.frame();
  const VoxelKey at = f.key_of(pose.position);
  if (!world.in_bounds(at)) raise(Err::OriginOutOfBounds, "pose is outside the world");
  if (world.occupied(at)) raise(Err::PoseInsideObstacle, "pose is inside an obstacle");

  Scan scan;
  scan.origin = pose;
  scan.beams.reserve(static_cast<std::size_t>(cfg.horizontal_rays) * cfg.vertical_rays);

  for (std::int32_t vi = 0; vi < cfg.vertical_rays; ++vi) {
    const double elevation =
        cfg.vertical_rays == 1
            ? 0.0
            : -0.5 * cfg.vertical_fov + cfg.vertical_fov * vi / (cfg.vertical_rays - 1);
    const double ce = std::cos(elevation);
    const double se = std::sin(elevation);
    for (std::int32_t hi = 0; hi < cfg.horizontal_rays; ++hi) {
      const double azimuth = pose.yaw + kTwoPi * hi / cfg.horizontal_rays;
      const Vec3 dir{ce * std::cos(azimuth), ce * std::sin(azimuth), se};
      const RayTrace trace = cast_ray(world, pose.position, dir, cfg.max_range);

      Beam beam;
      beam.direction = dir;
      beam.hit = trace.hit.has_value();
      if (beam.hit) {
        // Report the middle of the chord through the hit voxel, so replaying
        // the beam against the voxel lattice ends inside that exact voxel.
        // Corner grazes make the chord collapse to (near) zero width; the
        // entry distance is then the only value the replay can stop on.
        const double exit = ray_exit_t(*trace.hit, pose.position, dir, f);
        double range = 0.5 * (trace.t_hit + std::min(exit, cfg.max_range));
        if (!(range > trace.t_hit) || !(range < exit)) range = trace.t_hit;
        beam.range = std::min(range, cfg.max_range);
      } else {
        beam.range = cfg.max_range;
      }
      if (beam.hit && noise != nullptr && cfg.range_noise_sigma > 0.0) {
        beam.range = std::clamp(beam.range + cfg.range_noise_sigma * noise->gaussian(),
                                1e-6, cfg.max_range);
      }
      scan.beams.push_back(beam);

      if (beam.hit && world.fire(*trace.hit) && beam.range <= cfg.fire_detect_range) {
        scan.fire_observations.push_back(*trace.hit);
      }
    }
  }

  std::sort(scan.fire_observations.begin(), scan.fire_observations.end());
  scan.fire_observations.erase(
      std::unique(scan.fire_observations.begin(), scan.fire_observations.end()),
      scan.fire_observations.end());
  return scan;
}

void save_world(const WorldGrid& world, std::ostream& out) {
  char header[128];
  std::snprintf(header, sizeof(header), "voxplore-world v1 %d %d %d %.17g\n",
                world.nx, world.ny, world.nz, world.resolution);
  out << header;
  for (std::int32_t x = 0; x < world.nx; ++x) {
    for (std::int32_t y = 0; y < world.ny; ++y) {
      for (std::int32_t z = 0; z < world.nz; ++z) {
        const VoxelKey k{x, y, z};
        if (world.fire(k)) {
          out << x << ' ' << y << ' ' << z << " fire\n";
        } else if (world.occupied(k)) {
          out << x << ' ' << y << ' ' << z << " occupied\n";
        }
      }
    }
  }
}

void save_world_file(const WorldGrid& world, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Err::Io, "cannot open '" + path + "' for writing");
  save_world(world, out);
  if (!out) raise(Err::Io, "failed writing '" + path + "'");
}

WorldGrid load_world(std::istream& in) {
  std::string magic, version;
  WorldGrid w;
  if (!(in >> magic >> version >> w.nx >> w.ny >> w.nz >> w.resolution)) {
    raise(Err::ParseError, "world file: malformed header");
  }
  if (magic != "voxplore-world" || version != "v1") {
    raise(Err::ParseError, "world file: expected 'voxplore-world v1' header");
  }
  if (w.nx <= 0 || w.ny <= 0 || w.nz <= 0 || !(w.resolution > 0.0)) {
    raise(Err::ParseError, "world file: invalid dims or resolution");
  }
  w.occupied_cells.assign(static_cast<std::size_t>(w.voxel_count()), 0);
  w.fire_cells.assign(static_cast<std::size_t>(w.voxel_count()), 0);
  w.building_center_x = 0.5 * w.nx * w.resolution;
  w.building_center_y = 0.5 * w.ny * w.resolution;

  std::string line;
  std::getline(in, line);  // rest of header line
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    VoxelKey k;
    std::string tag;
    if (!(ls >> k.x >> k.y >> k.z >> tag)) {
      raise(Err::ParseError, "world file line " + std::to_string(line_no) + ": malformed");
    }
    if (!w.in_bounds(k)) {
      raise(Err::ParseError,
            "world file line " + std::to_string(line_no) + ": voxel out of bounds");
    }
    if (tag == "occupied") {
      w.occupied_cells[w.index_of(k)] = 1;
    } else if (tag == "fire") {
      w.occupied_cells[w.index_of(k)] = 1;
      w.fire_cells[w.index_of(k)] = 1;
    } else {
      raise(Err::ParseError,
            "world file line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
    }
  }
  w.validate();
  return w;
}

WorldGrid load_world_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Err::Io, "cannot open world file '" + path + "'");
  return load_world(in);
}

}  // namespace voxplore
