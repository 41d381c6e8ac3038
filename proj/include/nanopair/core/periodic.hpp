#pragma once

#include "nanopair/core/aabb.hpp"

namespace nanopair {

/// Wraps every component into [global.min, global.max) by whole periods.
Vec3 pbc_correct(const Vec3& p, const AABB& global);

/// Maps each component of a separation vector into (-L/2, L/2].
Vec3 minimum_image(const Vec3& delta, const AABB& global);

}  // namespace nanopair
