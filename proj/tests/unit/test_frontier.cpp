#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "frontier.hpp"
#include "helpers.hpp"
#include "rng.hpp"

using namespace voxplore;
using namespace voxplore::testutil;

namespace {

const Frame kUnitFrame{Vec3{}, 1.0};

KeyBox full_bounds(const OccupancyOctree& map) {
  const std::int32_t s = map.side() - 1;
  return {{0, 0, 0}, {s, s, s}};
}

// Definition applied literally to every key in the cube.
std::vector<FrontierCell> frontier_oracle(const OccupancyOctree& map, const KeyBox& bounds) {
  std::vector<FrontierCell> out;
  for (std::int32_t x = bounds.min.x; x <= bounds.max.x; ++x) {
    for (std::int32_t y = bounds.min.y; y <= bounds.max.y; ++y) {
      for (std::int32_t z = bounds.min.z; z <= bounds.max.z; ++z) {
        const VoxelKey k{x, y, z};
        if (map.state_of(k) != VoxelState::Free) continue;
        std::int32_t unknown = 0;
        for (const VoxelKey& d : kFaceNeighbors) {
          const VoxelKey n = k + d;
          if (map.in_cube(n) && map.state_of(n) == VoxelState::Unknown) ++unknown;
        }
        if (unknown > 0) out.push_back({k, unknown});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("a lone free voxel is a frontier with six unknown neighbors") {
  OccupancyOctree map(1.0, 3);
  map.update_voxel({1, 1, 1}, false);
  const auto cells = detect_frontiers(map, full_bounds(map));
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].key == VoxelKey{1, 1, 1});
  CHECK(cells[0].unknown_neighbors == 6);
}

TEST_CASE("a fully explored closed box has no frontiers") {
  OccupancyOctree map(1.0, 3);
  for (std::int32_t x = 0; x < 8; ++x) {
    for (std::int32_t y = 0; y < 8; ++y) {
      for (std::int32_t z = 0; z < 8; ++z) {
        const bool wall = x == 0 || y == 0 || z == 0 || x == 7 || y == 7 || z == 7;
        map.update_voxel({x, y, z}, wall);
      }
    }
  }
  CHECK(detect_frontiers(map, full_bounds(map)).empty());
}

TEST_CASE("random maps match the exhaustive frontier oracle") {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int32_t depth = static_cast<std::int32_t>(rng.uniform_int(3, 6));
    OccupancyOctree map(1.0, depth);
    const std::int32_t side = map.side();
    const int updates = static_cast<int>(rng.uniform_int(50, 2000));
    for (int i = 0; i < updates; ++i) {
      map.update_voxel({static_cast<std::int32_t>(rng.uniform_int(0, side - 1)),
                        static_cast<std::int32_t>(rng.uniform_int(0, side - 1)),
                        static_cast<std::int32_t>(rng.uniform_int(0, side - 1))},
                       rng.next_below(3) == 0);
    }
    if (rng.next_below(2) == 0) map.prune();  // detection must see through pruning

    const auto got = detect_frontiers(map, full_bounds(map));
    const auto want = frontier_oracle(map, full_bounds(map));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      REQUIRE(got[i].key == want[i].key);
      REQUIRE(got[i].unknown_neighbors == want[i].unknown_neighbors);
    }
    // Soundness re-check against the map.
    for (const FrontierCell& c : got) {
      REQUIRE(map.state_of(c.key) == VoxelState::Free);
      REQUIRE(c.unknown_neighbors >= 1);
      REQUIRE(c.unknown_neighbors <= 6);
    }
  }
}

TEST_CASE("bounds restrict the candidate cells") {
  OccupancyOctree map(1.0, 3);
  map.update_voxel({1, 1, 1}, false);
  map.update_voxel({5, 5, 5}, false);
  const auto cells = detect_frontiers(map, {{0, 0, 0}, {3, 3, 3}});
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].key == VoxelKey{1, 1, 1});
}

TEST_CASE("diagonal cells cluster under 26-connectivity") {
  const std::vector<FrontierCell> cells = {{{1, 1, 1}, 1}, {{2, 2, 2}, 1}};
  const auto clusters = cluster_frontiers(cells, 1, kUnitFrame);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].size == 2);
}

TEST_CASE("distant cells split into separate clusters") {
  const std::vector<FrontierCell> cells = {{{1, 1, 1}, 1}, {{5, 5, 5}, 1}};
  const auto clusters = cluster_frontiers(cells, 1, kUnitFrame);
  CHECK(clusters.size() == 2);
  const auto filtered = cluster_frontiers(cells, 2, kUnitFrame);
  CHECK(filtered.empty());
}

TEST_CASE("random cell sets match a union-find oracle") {
  Rng rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    std::set<VoxelKey> keys;
    while (keys.size() < 100) {
      keys.insert({static_cast<std::int32_t>(rng.uniform_int(0, 9)),
                   static_cast<std::int32_t>(rng.uniform_int(0, 9)),
                   static_cast<std::int32_t>(rng.uniform_int(0, 9))});
    }
    std::vector<FrontierCell> cells;
    for (const VoxelKey& k : keys) cells.push_back({k, 1});

    // Oracle: repeated neighborhood expansion over the raw set.
    std::set<std::set<VoxelKey>> want;
    std::set<VoxelKey> pending = keys;
    while (!pending.empty()) {
      std::set<VoxelKey> component;
      std::vector<VoxelKey> stack{*pending.begin()};
      pending.erase(pending.begin());
      component.insert(stack[0]);
      while (!stack.empty()) {
        const VoxelKey k = stack.back();
        stack.pop_back();
        for (std::int32_t dx = -1; dx <= 1; ++dx) {
          for (std::int32_t dy = -1; dy <= 1; ++dy) {
            for (std::int32_t dz = -1; dz <= 1; ++dz) {
              const VoxelKey n{k.x + dx, k.y + dy, k.z + dz};
              const auto it = pending.find(n);
              if (it != pending.end()) {
                pending.erase(it);
                component.insert(n);
                stack.push_back(n);
              }
            }
          }
        }
      }
      want.insert(component);
    }

    const auto clusters = cluster_frontiers(cells, 1, kUnitFrame);
    std::set<std::set<VoxelKey>> got;
    std::size_t total = 0;
    for (const FrontierCluster& c : clusters) {
      std::set<VoxelKey> member_keys;
      for (const FrontierCell& cell : c.cells) member_keys.insert(cell.key);
      got.insert(member_keys);
      total += c.cells.size();
    }
    REQUIRE(got == want);
    REQUIRE(total == cells.size());  // min size 1: clusters partition the input
  }
}

TEST_CASE("cluster ordering is by size then smallest key") {
  std::vector<FrontierCell> cells;
  // three-cell component at z=0, single cells at (9,9,9) and (0,9,9)
  cells.push_back({{0, 0, 0}, 1});
  cells.push_back({{1, 0, 0}, 1});
  cells.push_back({{2, 0, 0}, 1});
  cells.push_back({{9, 9, 9}, 1});
  cells.push_back({{0, 9, 9}, 1});
  const auto clusters = cluster_frontiers(cells, 1, kUnitFrame);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0].size == 3);
  CHECK(clusters[1].cells.front().key == VoxelKey{0, 9, 9});
  CHECK(clusters[2].cells.front().key == VoxelKey{9, 9, 9});
}

TEST_CASE("representative of a single cell is that cell") {
  const std::vector<FrontierCell> cells = {{{4, 2, 0}, 3}};
  CHECK(cluster_representative(cells) == VoxelKey{4, 2, 0});
}

TEST_CASE("symmetric two-cell cluster picks the lexicographically smaller key") {
  const std::vector<FrontierCell> cells = {{{1, 1, 1}, 1}, {{2, 1, 1}, 1}};
  CHECK(cluster_representative(cells) == VoxelKey{1, 1, 1});
}

TEST_CASE("L-shaped cluster representative minimizes distance to the centroid") {
  const std::vector<FrontierCell> cells = {
      {{0, 0, 0}, 1}, {{1, 0, 0}, 1}, {{2, 0, 0}, 1}, {{2, 1, 0}, 1}, {{2, 2, 0}, 1}};
  // Direct enumeration oracle.
  double cx = 0, cy = 0, cz = 0;
  for (const auto& c : cells) {
    cx += c.key.x + 0.5;
    cy += c.key.y + 0.5;
    cz += c.key.z + 0.5;
  }
  cx /= cells.size();
  cy /= cells.size();
  cz /= cells.size();
  double best = 1e300;
  VoxelKey want{};
  for (const auto& c : cells) {
    const double dx = c.key.x + 0.5 - cx, dy = c.key.y + 0.5 - cy, dz = c.key.z + 0.5 - cz;
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best) {
      best = d2;
      want = c.key;
    }
  }
  CHECK(cluster_representative(cells) == want);
  // (1,0,0) and (2,1,0) tie at squared distance 0.52; the smaller key wins.
  CHECK(want == VoxelKey{1, 0, 0});
}

TEST_CASE("centroid is the mean of member centers in world coordinates") {
  const Frame frame{Vec3{}, 0.5};
  const std::vector<FrontierCell> cells = {{{0, 0, 0}, 1}, {{1, 0, 0}, 1}};
  const auto clusters = cluster_frontiers(cells, 1, frame);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].centroid.x == doctest::Approx(0.5));
  CHECK(clusters[0].centroid.y == doctest::Approx(0.25));
  CHECK(clusters[0].centroid.z == doctest::Approx(0.25));
  CHECK(clusters[0].representative == VoxelKey{0, 0, 0});
}

TEST_CASE("identical maps give identical ordered cluster lists") {
  Rng rng(12);
  OccupancyOctree map(1.0, 4);
  for (int i = 0; i < 300; ++i) {
    map.update_voxel({static_cast<std::int32_t>(rng.uniform_int(0, 15)),
                      static_cast<std::int32_t>(rng.uniform_int(0, 15)),
                      static_cast<std::int32_t>(rng.uniform_int(0, 15))},
                     rng.next_below(4) == 0);
  }
  const auto cells = detect_frontiers(map, full_bounds(map));
  const auto a = cluster_frontiers(cells, 2, kUnitFrame);
  const auto b = cluster_frontiers(cells, 2, kUnitFrame);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].representative == b[i].representative);
    CHECK(a[i].size == b[i].size);
    CHECK(a[i].cells.size() == b[i].cells.size());
    for (std::size_t j = 0; j < a[i].cells.size(); ++j) {
      CHECK(a[i].cells[j].key == b[i].cells[j].key);
    }
  }
}
