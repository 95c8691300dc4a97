#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>

namespace voxplore {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool operator==(const Vec3& o) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return n > 0.0 ? (*this) / n : Vec3{};
  }
};

/// Integer leaf-voxel address. Ordering is lexicographic (x, then y, then z);
/// every deterministic tie-break in the project relies on it.
struct VoxelKey {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  auto operator<=>(const VoxelKey&) const = default;
};

/// Inclusive axis-aligned box in key space.
struct KeyBox {
  VoxelKey min;
  VoxelKey max;

  bool contains(const VoxelKey& k) const {
    return k.x >= min.x && k.x <= max.x && k.y >= min.y && k.y <= max.y &&
           k.z >= min.z && k.z <= max.z;
  }
};

/// Placement of a voxel lattice in world coordinates.
struct Frame {
  Vec3 origin;
  double resolution = 1.0;

  VoxelKey key_of(const Vec3& p) const {
    return {static_cast<std::int32_t>(std::floor((p.x - origin.x) / resolution)),
            static_cast<std::int32_t>(std::floor((p.y - origin.y) / resolution)),
            static_cast<std::int32_t>(std::floor((p.z - origin.z) / resolution))};
  }
  Vec3 center_of(const VoxelKey& k) const {
    return {origin.x + (k.x + 0.5) * resolution,
            origin.y + (k.y + 0.5) * resolution,
            origin.z + (k.z + 0.5) * resolution};
  }
};

inline constexpr VoxelKey kFaceNeighbors[6] = {
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

inline VoxelKey operator+(const VoxelKey& a, const VoxelKey& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    // 3D lattice hash with large odd multipliers.
    std::uint64_t h = static_cast<std::uint32_t>(k.x) * 73856093ULL;
    h ^= static_cast<std::uint32_t>(k.y) * 19349669ULL;
    h ^= static_cast<std::uint32_t>(k.z) * 83492791ULL;
    return static_cast<std::size_t>(h * 0x9E3779B97F4A7C15ULL >> 16);
  }
};

}  // namespace voxplore
