#include "frontier.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "errors.hpp"

namespace voxplore {
namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<FrontierCell> detect_frontiers(const OccupancyOctree& map, const KeyBox& bounds,
                                           const FrontierOptions& opts) {
  std::vector<FrontierCell> out;

  const auto scan_cell = [&](const VoxelKey& k) {
    std::int32_t unknown = 0;
    for (const VoxelKey& d : kFaceNeighbors) {
      const VoxelKey n = k + d;
      if (!map.in_cube(n)) {
        if (opts.outside_cube_is_unknown) ++unknown;
        continue;
      }
      if (map.state_of(n) == VoxelState::Unknown) ++unknown;
    }
    if (unknown > 0) out.push_back({k, unknown});
  };

  map.for_each_leaf([&](const LeafCube& cube) {
    if (cube.state != VoxelState::Free) return;
    const VoxelKey lo{std::max(cube.min.x, bounds.min.x), std::max(cube.min.y, bounds.min.y),
                      std::max(cube.min.z, bounds.min.z)};
    const VoxelKey hi{std::min(cube.min.x + cube.size - 1, bounds.max.x),
                      std::min(cube.min.y + cube.size - 1, bounds.max.y),
                      std::min(cube.min.z + cube.size - 1, bounds.max.z)};
    if (lo.x > hi.x || lo.y > hi.y || lo.z > hi.z) return;
    for (std::int32_t x = lo.x; x <= hi.x; ++x) {
      for (std::int32_t y = lo.y; y <= hi.y; ++y) {
        for (std::int32_t z = lo.z; z <= hi.z; ++z) {
          // Interior cells of a uniform Free cube only border cells of the
          // same cube; they can never be frontier.
          const bool on_surface =
              x == cube.min.x || x == cube.min.x + cube.size - 1 || y == cube.min.y ||
              y == cube.min.y + cube.size - 1 || z == cube.min.z ||
              z == cube.min.z + cube.size - 1;
          if (!on_surface) continue;
          scan_cell({x, y, z});
        }
      }
    }
  });

  std::sort(out.begin(), out.end(),
            [](const FrontierCell& a, const FrontierCell& b) { return a.key < b.key; });
  return out;
}

VoxelKey cluster_representative(const std::vector<FrontierCell>& cells) {
  if (cells.empty()) raise(Err::InvalidArgument, "cluster must be non-empty");
  double cx = 0.0, cy = 0.0, cz = 0.0;
  for (const FrontierCell& c : cells) {
    cx += c.key.x + 0.5;
    cy += c.key.y + 0.5;
    cz += c.key.z + 0.5;
  }
  const double n = static_cast<double>(cells.size());
  cx /= n;
  cy /= n;
  cz /= n;

  VoxelKey best = cells.front().key;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const FrontierCell& c : cells) {
    const double dx = c.key.x + 0.5 - cx;
    const double dy = c.key.y + 0.5 - cy;
    const double dz = c.key.z + 0.5 - cz;
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best_d2 || (d2 == best_d2 && c.key < best)) {
      best_d2 = d2;
      best = c.key;
    }
  }
  return best;
}

std::vector<FrontierCluster> cluster_frontiers(const std::vector<FrontierCell>& cells,
                                               std::int64_t min_cluster_size,
                                               const Frame& frame) {
  if (min_cluster_size < 1) raise(Err::InvalidParams, "min_cluster_size must be >= 1");

  std::unordered_map<VoxelKey, std::int32_t, VoxelKeyHash> index;
  index.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    index.emplace(cells[i].key, static_cast<std::int32_t>(i));
  }

  UnionFind uf(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const VoxelKey& k = cells[i].key;
    for (std::int32_t dx = -1; dx <= 1; ++dx) {
      for (std::int32_t dy = -1; dy <= 1; ++dy) {
        for (std::int32_t dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const auto it = index.find({k.x + dx, k.y + dy, k.z + dz});
          if (it != index.end()) uf.unite(static_cast<std::int32_t>(i), it->second);
        }
      }
    }
  }

  std::unordered_map<std::int32_t, std::vector<FrontierCell>> groups;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    groups[uf.find(static_cast<std::int32_t>(i))].push_back(cells[i]);
  }

  std::vector<FrontierCluster> clusters;
  for (auto& [root, members] : groups) {
    (void)root;
    if (static_cast<std::int64_t>(members.size()) < min_cluster_size) continue;
    std::sort(members.begin(), members.end(),
              [](const FrontierCell& a, const FrontierCell& b) { return a.key < b.key; });
    FrontierCluster cluster;
    cluster.size = static_cast<std::int64_t>(members.size());
    Vec3 sum;
    for (const FrontierCell& c : members) sum += frame.center_of(c.key);
    cluster.centroid = sum / static_cast<double>(members.size());
    cluster.representative = cluster_representative(members);
    cluster.cells = std::move(members);
    clusters.push_back(std::move(cluster));
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const FrontierCluster& a, const FrontierCluster& b) {
              if (a.size != b.size) return a.size > b.size;
              return a.cells.front().key < b.cells.front().key;
            });
  return clusters;
}

}  // namespace voxplore
