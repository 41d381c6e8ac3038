#include "nanopair/balance/forest.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "nanopair/balance/sfc.hpp"
#include "nanopair/core/errors.hpp"

namespace nanopair {

BlockForest::BlockForest(const AABB& global, CurveKind curve, int max_depth)
    : global_(global), curve_(curve), max_depth_(max_depth) {
  if (max_depth < 0 || max_depth > 21) throw ConfigError("max_depth", "must lie in [0, 21]");
  if (global.is_empty()) throw ConfigError("domain", "global domain is empty");
  leaves_.push_back(make_block(0, {0, 0, 0}));
}

Block BlockForest::make_block(int level, std::array<std::uint32_t, 3> coord) const {
  Block b;
  b.level = level;
  b.coord = coord;
  const double n = static_cast<double>(std::uint64_t{1} << level);
  const Vec3 ext = global_.extent();
  for (int d = 0; d < 3; ++d) {
    b.aabb.min[d] = global_.min[d] + ext[d] * (coord[d] / n);
    b.aabb.max[d] = coord[d] + 1 == static_cast<std::uint32_t>(n)
                        ? global_.max[d]
                        : global_.min[d] + ext[d] * ((coord[d] + 1) / n);
  }
  const int shift = max_depth_ - level;
  const auto cx = coord[0] << shift, cy = coord[1] << shift, cz = coord[2] << shift;
  b.sfc_key = curve_ == CurveKind::Morton ? morton_key(cx, cy, cz, max_depth_)
                                          : hilbert_key(cx, cy, cz, max_depth_);
  return b;
}

void BlockForest::refine(std::size_t i) {
  const Block parent = leaves_.at(i);
  if (parent.level >= max_depth_) throw std::logic_error("block already at max depth");
  leaves_.erase(leaves_.begin() + static_cast<std::ptrdiff_t>(i));
  for (std::uint32_t c = 0; c < 8; ++c) {
    const std::array<std::uint32_t, 3> coord{2 * parent.coord[0] + (c & 1),
                                             2 * parent.coord[1] + ((c >> 1) & 1),
                                             2 * parent.coord[2] + ((c >> 2) & 1)};
    Block child = make_block(parent.level + 1, coord);
    child.owner = parent.owner;
    leaves_.push_back(child);
  }
}

Block BlockForest::parent_of(const std::vector<std::size_t>& siblings) const {
  if (siblings.size() != 8) throw std::logic_error("merge needs a complete octet");
  const Block& first = leaves_.at(siblings[0]);
  if (first.level == 0) throw std::logic_error("the root has no parent");
  Block parent = make_block(first.level - 1, {first.coord[0] / 2, first.coord[1] / 2, first.coord[2] / 2});
  parent.owner = first.owner;
  for (std::size_t k : siblings) {
    parent.computational_weight += leaves_.at(k).computational_weight;
    parent.communication_weight += leaves_.at(k).communication_weight;
  }
  return parent;
}

void BlockForest::merge(const std::vector<std::size_t>& siblings) {
  const Block parent = parent_of(siblings);
  std::vector<std::size_t> order = siblings;
  std::sort(order.rbegin(), order.rend());
  for (std::size_t k : order) leaves_.erase(leaves_.begin() + static_cast<std::ptrdiff_t>(k));
  leaves_.push_back(parent);
}

void BlockForest::sort_by_key() {
  std::sort(leaves_.begin(), leaves_.end(),
            [](const Block& a, const Block& b) { return a.sfc_key < b.sfc_key; });
}

int BlockForest::locate(const Vec3& p) const {
  for (std::size_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i].aabb.contains(p)) return static_cast<int>(i);
  return -1;
}

std::vector<int> BlockForest::owners() const {
  std::vector<int> out;
  out.reserve(leaves_.size());
  for (const Block& b : leaves_) out.push_back(b.owner);
  return out;
}

std::vector<AABB> BlockForest::boxes() const {
  std::vector<AABB> out;
  out.reserve(leaves_.size());
  for (const Block& b : leaves_) out.push_back(b.aabb);
  return out;
}

int refine_and_merge(BlockForest& forest, const BalanceOptions& opts, const WeightRecount& recount) {
  opts.validate();
  int passes = 0;
  recount(forest);
  for (;;) {
    ++passes;
    bool changed = false;
    for (std::size_t i = forest.size(); i-- > 0;) {
      const Block& b = forest.leaves()[i];
      if (b.weight() > opts.refine_threshold && b.level < forest.max_depth()) {
        forest.refine(i);
        changed = true;
      }
    }
    if (changed) {
      forest.sort_by_key();
      recount(forest);
      continue;
    }

    // Group leaves by parent; only complete octets of leaves can merge.
    std::map<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>, std::vector<std::size_t>> octets;
    for (std::size_t i = 0; i < forest.size(); ++i) {
      const Block& b = forest.leaves()[i];
      if (b.level == 0) continue;
      octets[{b.level, b.coord[0] / 2, b.coord[1] / 2, b.coord[2] / 2}].push_back(i);
    }
    std::vector<std::vector<std::size_t>> merges;
    for (auto& [key, members] : octets) {
      if (members.size() != 8) continue;
      double w = 0.0;
      for (std::size_t k : members) w += forest.leaves()[k].weight();
      if (w < opts.merge_threshold) merges.push_back(members);
    }
    if (merges.empty()) break;
    std::vector<bool> dropped(forest.size(), false);
    std::vector<Block> next;
    for (const auto& m : merges) {
      next.push_back(forest.parent_of(m));
      for (std::size_t k : m) dropped[k] = true;
    }
    for (std::size_t i = 0; i < forest.size(); ++i)
      if (!dropped[i]) next.push_back(forest.leaves()[i]);
    forest.leaves() = std::move(next);
    forest.sort_by_key();
    recount(forest);
  }
  return passes;
}

}  // namespace nanopair
