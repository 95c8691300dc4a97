#include "occupancy.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "raycast.hpp"

namespace voxplore {

void LogOddsParams::validate() const {
  if (!(l_min < 0.0 && 0.0 < l_max)) raise(Err::InvalidParams, "need l_min < 0 < l_max");
  if (!(l_hit > 0.0)) raise(Err::InvalidParams, "l_hit must be positive");
  if (!(l_miss < 0.0)) raise(Err::InvalidParams, "l_miss must be negative");
  if (!(l_min <= occ_threshold && occ_threshold <= l_max)) {
    raise(Err::InvalidParams, "occ_threshold must lie within [l_min, l_max]");
  }
}

OccupancyOctree::OccupancyOctree(double resolution, std::int32_t max_depth,
                                 LogOddsParams params)
    : resolution_(resolution), max_depth_(max_depth), params_(params) {
  if (!(resolution > 0.0)) raise(Err::InvalidParams, "resolution must be positive");
  if (max_depth < 1 || max_depth > 16) {
    raise(Err::InvalidParams, "max_depth must be in [1, 16]");
  }
  params_.validate();
}

void OccupancyOctree::check_key(const VoxelKey& key) const {
  if (!in_cube(key)) {
    raise(Err::KeyOutOfRange, "key (" + std::to_string(key.x) + "," + std::to_string(key.y) +
                                  "," + std::to_string(key.z) + ") outside map cube of side " +
                                  std::to_string(side()));
  }
}

int OccupancyOctree::child_index(const VoxelKey& key, std::int32_t depth) const {
  const std::int32_t bit = max_depth_ - 1 - depth;
  return ((key.x >> bit) & 1) | (((key.y >> bit) & 1) << 1) | (((key.z >> bit) & 1) << 2);
}

OccupancyOctree::Node* OccupancyOctree::leaf_for_update(const VoxelKey& key) {
  const bool had_root = root_ != nullptr;
  if (!root_) root_ = std::make_unique<Node>();
  Node* node = root_.get();
  // A pre-existing childless node above leaf depth is a collapsed uniform
  // cube; splitting one must materialize all eight children with the cube
  // value, or the untouched siblings would start reading Unknown.
  bool in_observed = had_root;
  for (std::int32_t depth = 0; depth < max_depth_; ++depth) {
    if (in_observed && node->is_leaf()) {
      for (auto& c : node->child) {
        c = std::make_unique<Node>();
        c->log_odds = node->log_odds;
      }
    }
    const int idx = child_index(key, depth);
    if (!node->child[idx]) {
      node->child[idx] = std::make_unique<Node>();
      in_observed = false;
    }
    node = node->child[idx].get();
  }
  return node;
}

double OccupancyOctree::update_voxel(const VoxelKey& key, bool hit) {
  check_key(key);
  Node* leaf = leaf_for_update(key);
  const double delta = hit ? params_.l_hit : params_.l_miss;
  leaf->log_odds = std::clamp(leaf->log_odds + delta, params_.l_min, params_.l_max);
  return leaf->log_odds;
}

std::pair<std::int64_t, std::int64_t> OccupancyOctree::integrate_scan(const Scan& scan) {
  const Frame f = frame();
  if (!in_cube(f.key_of(scan.origin.position))) {
    raise(Err::ScanOutOfBounds, "scan origin is outside the map cube");
  }

  std::unordered_set<VoxelKey, VoxelKeyHash> hits;
  std::unordered_set<VoxelKey, VoxelKeyHash> misses;

  for (const Beam& beam : scan.beams) {
    VoxelKey last{};
    bool any = false;
    bool clipped = false;
    traverse_ray(scan.origin.position, beam.direction, beam.range, f,
                 [&](const VoxelKey& k, double t) {
                   if (!in_cube(k)) {
                     clipped = true;  // endpoint lies outside the cube
                     return RayStep::Stop;
                   }
                   if (any) misses.insert(last);
                   last = k;
                   any = true;
                   // A hit voxel grazed exactly at a corner has a zero-length
                   // chord, so its reported range equals its entry distance;
                   // stopping here keeps the hit from sliding one voxel past
                   // the obstacle.
                   if (beam.hit && t == beam.range) return RayStep::Stop;
                   return RayStep::Continue;
                 });
    if (!any) continue;
    if (!clipped && beam.hit) {
      hits.insert(last);
    } else {
      misses.insert(last);
    }
  }

  std::int64_t hit_updates = 0;
  std::int64_t miss_updates = 0;
  for (const VoxelKey& k : hits) {
    update_voxel(k, true);
    ++hit_updates;
  }
  for (const VoxelKey& k : misses) {
    if (hits.count(k)) continue;  // hit takes precedence within one scan
    update_voxel(k, false);
    ++miss_updates;
  }
  return {miss_updates, hit_updates};
}

VoxelState OccupancyOctree::state_of(const VoxelKey& key) const {
  bool observed = false;
  const double l = log_odds_of(key, &observed);
  return observed ? classify(l) : VoxelState::Unknown;
}

double OccupancyOctree::log_odds_of(const VoxelKey& key, bool* observed) const {
  check_key(key);
  const Node* node = root_.get();
  if (!node) {
    if (observed) *observed = false;
    return 0.0;
  }
  for (std::int32_t depth = 0; depth < max_depth_; ++depth) {
    if (node->is_leaf()) break;  // collapsed uniform cube covers the key
    const int idx = child_index(key, depth);
    node = node->child[idx].get();
    if (!node) {
      if (observed) *observed = false;
      return 0.0;
    }
  }
  if (observed) *observed = true;
  return node->log_odds;
}

std::int64_t OccupancyOctree::prune() {
  std::int64_t removed = 0;
  const auto rec = [&](auto&& self, Node& node) -> void {
    bool all_leaf_children = true;
    for (auto& c : node.child) {
      if (!c) {
        all_leaf_children = false;
        continue;
      }
      if (!c->is_leaf()) self(self, *c);
      if (!c->is_leaf()) all_leaf_children = false;
    }
    if (!all_leaf_children) return;
    int present = 0;
    for (const auto& c : node.child) present += c ? 1 : 0;
    if (present != 8) return;
    const double value = node.child[0]->log_odds;
    for (const auto& c : node.child) {
      if (c->log_odds != value) return;
    }
    for (auto& c : node.child) c.reset();
    node.log_odds = value;
    removed += 8;
  };
  if (root_ && !root_->is_leaf()) rec(rec, *root_);
  return removed;
}

void OccupancyOctree::for_each_leaf(const std::function<void(const LeafCube&)>& fn) const {
  if (!root_) return;
  const auto rec = [&](auto&& self, const Node& node, VoxelKey min, std::int32_t depth) -> void {
    if (node.is_leaf()) {
      LeafCube cube;
      cube.min = min;
      cube.size = 1 << (max_depth_ - depth);
      cube.log_odds = node.log_odds;
      cube.state = classify(node.log_odds);
      fn(cube);
      return;
    }
    const std::int32_t half = 1 << (max_depth_ - depth - 1);
    for (int idx = 0; idx < 8; ++idx) {
      const Node* c = node.child[idx].get();
      if (!c) continue;
      const VoxelKey cmin{min.x + ((idx & 1) ? half : 0), min.y + ((idx & 2) ? half : 0),
                          min.z + ((idx & 4) ? half : 0)};
      self(self, *c, cmin, depth + 1);
    }
  };
  rec(rec, *root_, VoxelKey{0, 0, 0}, 0);
}

MemoryStats OccupancyOctree::memory_stats() const {
  MemoryStats stats;
  const auto rec = [&](auto&& self, const Node& node) -> void {
    ++stats.node_count;
    if (node.is_leaf()) {
      ++stats.leaf_count;
      return;
    }
    for (const auto& c : node.child) {
      if (c) self(self, *c);
    }
  };
  if (root_) rec(rec, *root_);
  stats.estimated_bytes = stats.node_count * kNodeBytes;
  return stats;
}

void OccupancyOctree::save(std::ostream& out) const {
  char header[96];
  std::snprintf(header, sizeof(header), "voxplore-map v1 %.17g %d\n", resolution_, max_depth_);
  out << header;
  for_each_leaf([&](const LeafCube& cube) {
    char line[128];
    std::snprintf(line, sizeof(line), "%d %d %d %d %.17g\n", cube.min.x, cube.min.y,
                  cube.min.z, cube.size, cube.log_odds);
    out << line;
  });
}

void OccupancyOctree::set_leaf_cube(const VoxelKey& min, std::int32_t size, double log_odds) {
  if (size < 1 || (size & (size - 1)) != 0 || size > side()) {
    raise(Err::ParseError, "map leaf size must be a power of two within the cube");
  }
  if (min.x % size || min.y % size || min.z % size) {
    raise(Err::ParseError, "map leaf is not aligned to its size");
  }
  check_key(min);
  check_key({min.x + size - 1, min.y + size - 1, min.z + size - 1});

  std::int32_t leaf_depth = max_depth_;
  for (std::int32_t s = size; s > 1; s >>= 1) --leaf_depth;

  if (!root_) root_ = std::make_unique<Node>();
  Node* node = root_.get();
  if (leaf_depth == 0) {
    if (!node->is_leaf()) raise(Err::ParseError, "map leaves overlap");
    node->log_odds = log_odds;
    return;
  }
  for (std::int32_t depth = 0; depth < leaf_depth; ++depth) {
    const int idx = child_index(min, depth);
    if (!node->child[idx]) node->child[idx] = std::make_unique<Node>();
    node = node->child[idx].get();
  }
  if (!node->is_leaf()) raise(Err::ParseError, "map leaves overlap");
  node->log_odds = log_odds;
}

OccupancyOctree OccupancyOctree::load(std::istream& in, LogOddsParams params) {
  std::string magic, version;
  double resolution = 0.0;
  std::int32_t max_depth = 0;
  if (!(in >> magic >> version >> resolution >> max_depth)) {
    raise(Err::ParseError, "map file: malformed header");
  }
  if (magic != "voxplore-map" || version != "v1") {
    raise(Err::ParseError, "map file: expected 'voxplore-map v1' header");
  }
  OccupancyOctree map(resolution, max_depth, params);
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    VoxelKey min;
    std::int32_t size = 0;
    double log_odds = 0.0;
    if (!(ls >> min.x >> min.y >> min.z >> size >> log_odds)) {
      raise(Err::ParseError, "map file line " + std::to_string(line_no) + ": malformed");
    }
    map.set_leaf_cube(min, size, log_odds);
  }
  return map;
}

void OccupancyOctree::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Err::Io, "cannot open '" + path + "' for writing");
  save(out);
  if (!out) raise(Err::Io, "failed writing '" + path + "'");
}

OccupancyOctree OccupancyOctree::load_file(const std::string& path, LogOddsParams params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Err::Io, "cannot open map file '" + path + "'");
  return load(in, params);
}

}  // namespace voxplore
