#pragma once

#include <algorithm>
#include <limits>

#include "nanopair/core/vec3.hpp"

namespace nanopair {

/// Axis-aligned box. Membership tests treat it as half-open [min, max) so that
/// boxes tiling a region assign every point to exactly one owner.
struct AABB {
  Vec3 min;
  Vec3 max;

  /// Inverted box (min = +inf, max = -inf); the identity element of aabb_union.
  static constexpr AABB empty() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {{inf, inf, inf}, {-inf, -inf, -inf}};
  }

  /// Box with min and max swapped, the seed used by the particle-bounds reduction.
  static constexpr AABB inverted(const AABB& b) { return {b.max, b.min}; }

  constexpr bool is_empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
  constexpr Vec3 extent() const { return max - min; }
  constexpr Vec3 center() const { return 0.5 * (min + max); }
  constexpr double volume() const {
    if (is_empty()) return 0.0;
    const Vec3 e = extent();
    return e.x * e.y * e.z;
  }

  constexpr bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x < max.x && p.y >= min.y && p.y < max.y && p.z >= min.z &&
           p.z < max.z;
  }

  constexpr AABB expanded(double margin) const {
    const Vec3 m{margin, margin, margin};
    return {min - m, max + m};
  }

  constexpr AABB shifted(const Vec3& s) const { return {min + s, max + s}; }

  friend constexpr bool operator==(const AABB&, const AABB&) = default;
};

constexpr AABB aabb_union(const AABB& a, const AABB& b) {
  return {{std::min(a.min.x, b.min.x), std::min(a.min.y, b.min.y), std::min(a.min.z, b.min.z)},
          {std::max(a.max.x, b.max.x), std::max(a.max.y, b.max.y), std::max(a.max.z, b.max.z)}};
}

constexpr AABB aabb_union(const AABB& a, const Vec3& p) { return aabb_union(a, AABB{p, p}); }

constexpr AABB aabb_intersection(const AABB& a, const AABB& b) {
  return {{std::max(a.min.x, b.min.x), std::max(a.min.y, b.min.y), std::max(a.min.z, b.min.z)},
          {std::min(a.max.x, b.max.x), std::min(a.max.y, b.max.y), std::min(a.max.z, b.max.z)}};
}

/// Euclidean distance from a point to the closed box (0 inside).
inline double distance_sq(const AABB& b, const Vec3& p) {
  double d2 = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double lo = b.min[d] - p[d];
    const double hi = p[d] - b.max[d];
    const double g = std::max({lo, hi, 0.0});
    d2 += g * g;
  }
  return d2;
}

/// Euclidean gap between two closed boxes (0 when they touch or overlap).
inline double distance_sq(const AABB& a, const AABB& b) {
  double d2 = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double g = std::max({a.min[d] - b.max[d], b.min[d] - a.max[d], 0.0});
    d2 += g * g;
  }
  return d2;
}

}  // namespace nanopair
