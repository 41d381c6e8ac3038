#include "nanopair/balance/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nanopair/comm/pattern.hpp"
#include "nanopair/core/errors.hpp"

namespace nanopair {

std::vector<int> partition_blocks(BlockForest& forest, int ranks) {
  if (ranks < 1) throw ConfigError("ranks", "must be at least 1");
  auto& leaves = forest.leaves();
  const std::size_t n = leaves.size();
  double total = 0.0;
  for (const Block& b : leaves) total += b.weight();

  std::vector<int> owners(n, 0);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int r;
    if (total > 0.0) {
      const double quota = total / ranks;
      r = static_cast<int>(std::floor((prefix + 0.5 * leaves[i].weight()) / quota));
    } else {
      r = static_cast<int>((i * static_cast<std::size_t>(ranks)) / n);
    }
    owners[i] = std::clamp(r, 0, ranks - 1);
    leaves[i].owner = owners[i];
    prefix += leaves[i].weight();
  }
  return owners;
}

std::vector<double> rank_weights(const BlockForest& forest, const std::vector<int>& owners, int ranks) {
  if (owners.size() != forest.size()) throw std::invalid_argument("one owner per leaf expected");
  std::vector<double> w(ranks, 0.0);
  for (std::size_t i = 0; i < owners.size(); ++i) w.at(owners[i]) += forest.leaves()[i].weight();
  return w;
}

double imbalance(const std::vector<double>& per_rank) {
  if (per_rank.empty()) return 1.0;
  double sum = 0.0, mx = 0.0;
  for (double w : per_rank) {
    sum += w;
    mx = std::max(mx, w);
  }
  if (sum <= 0.0) return 1.0;
  return mx / (sum / static_cast<double>(per_rank.size()));
}

std::vector<int> grid_owners(const BlockForest& forest, const std::array<int, 3>& dims) {
  const RankGrid grid{dims};
  std::vector<int> owners;
  owners.reserve(forest.size());
  for (const Block& b : forest.leaves()) {
    const Vec3 c = b.aabb.center();
    int owner = 0;
    for (int r = 0; r < grid.size(); ++r)
      if (grid.box(r, forest.global()).contains(c)) owner = r;
    owners.push_back(owner);
  }
  return owners;
}

}  // namespace nanopair
