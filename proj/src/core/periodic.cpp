#include "nanopair/core/periodic.hpp"

#include <cmath>

namespace nanopair {

namespace {

double wrap(double v, double lo, double hi) {
  if (v >= lo && v < hi) return v;
  const double len = hi - lo;
  double w = v - std::floor((v - lo) / len) * len;
  // Rounding can land exactly on either edge.
  if (w < lo) w += len;
  if (w >= hi) w = lo;
  return w;
}

double nearest(double d, double len) {
  const double half = 0.5 * len;
  if (d > half) return d - len;
  if (d <= -half) return d + len;
  return d;
}

}  // namespace

Vec3 pbc_correct(const Vec3& p, const AABB& global) {
  return {wrap(p.x, global.min.x, global.max.x), wrap(p.y, global.min.y, global.max.y),
          wrap(p.z, global.min.z, global.max.z)};
}

Vec3 minimum_image(const Vec3& delta, const AABB& global) {
  const Vec3 len = global.extent();
  return {nearest(delta.x, len.x), nearest(delta.y, len.y), nearest(delta.z, len.z)};
}

}  // namespace nanopair
