#include "nanopair/balance/rank_domain.hpp"

namespace nanopair {

AABB crop_grid_region(const AABB& union_aabb, const AABB& particles, double spacing, const AABB& global) {
  if (union_aabb.is_empty()) return AABB{global.min, global.min};
  if (particles.is_empty()) return union_aabb.expanded(spacing);
  const AABB crop = aabb_intersection(union_aabb, particles);
  if (crop.is_empty()) return union_aabb.expanded(spacing);
  return crop.expanded(spacing);
}

RankDomain rebuild_rank_domain(const BlockForest& forest, int me, double spacing) {
  RankDomain d;
  d.rank = me;
  d.spacing = spacing;
  for (const Block& b : forest.leaves())
    if (b.owner == me) {
      d.blocks.push_back(b.aabb);
      d.union_aabb = aabb_union(d.union_aabb, b.aabb);
    }
  d.grid_aabb = d.union_aabb.is_empty() ? AABB{forest.global().min, forest.global().min}
                                        : d.union_aabb.expanded(spacing);
  d.neighbors = neighbor_table(me, d.blocks, forest.boxes(), forest.owners(), forest.global(), spacing);
  return d;
}

}  // namespace nanopair
