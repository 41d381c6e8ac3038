#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nanopair/core/aabb.hpp"
#include "nanopair/core/config.hpp"

namespace nanopair {

/// Leaf of the block octree. `coord` indexes the block on its level's
/// 2^level grid; the curve key is that of its min-corner cell at max depth.
struct Block {
  int level = 0;
  std::array<std::uint32_t, 3> coord{0, 0, 0};
  AABB aabb{};
  std::uint64_t sfc_key = 0;
  double computational_weight = 0.0;  // local particles inside
  double communication_weight = 0.0;  // ghosts inside
  int owner = 0;

  double weight() const noexcept { return computational_weight + communication_weight; }
};

/// Octree over the global domain, stored as its leaves sorted by curve key.
/// Every rank holds an identical copy.
class BlockForest {
 public:
  BlockForest(const AABB& global, CurveKind curve, int max_depth);

  const AABB& global() const noexcept { return global_; }
  CurveKind curve() const noexcept { return curve_; }
  int max_depth() const noexcept { return max_depth_; }

  const std::vector<Block>& leaves() const noexcept { return leaves_; }
  std::vector<Block>& leaves() noexcept { return leaves_; }
  std::size_t size() const noexcept { return leaves_.size(); }

  Block make_block(int level, std::array<std::uint32_t, 3> coord) const;

  /// Replaces leaf `i` by its eight children (weights zeroed).
  void refine(std::size_t i);
  /// Parent of a complete sibling octet, carrying their summed weights.
  Block parent_of(const std::vector<std::size_t>& siblings) const;
  /// Replaces the leaves listed in `siblings` (a complete octet) by their parent.
  void merge(const std::vector<std::size_t>& siblings);
  void sort_by_key();

  /// Index of the leaf containing `p` (half-open boxes), or -1.
  int locate(const Vec3& p) const;

  std::vector<int> owners() const;
  std::vector<AABB> boxes() const;

 private:
  AABB global_;
  CurveKind curve_;
  int max_depth_;
  std::vector<Block> leaves_;
};

/// Recomputes the weights of all leaves. Collective when ranks are involved.
using WeightRecount = std::function<void(BlockForest&)>;

/// Refines leaves heavier than the refine threshold (down to max depth) and
/// merges complete sibling octets whose summed weight is below the merge
/// threshold, until neither applies. Returns the number of passes.
int refine_and_merge(BlockForest& forest, const BalanceOptions& opts, const WeightRecount& recount);

}  // namespace nanopair
