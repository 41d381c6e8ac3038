#pragma once

#include <vector>

#include "nanopair/balance/forest.hpp"

namespace nanopair {

/// Assigns leaves, in curve order, to `ranks` contiguous segments: a leaf
/// goes to floor((prefix + w/2) / (W/ranks)) clamped to ranks-1, where prefix
/// is the weight before it. Sets Block::owner and returns the owners. With
/// zero total weight the leaves are split evenly by count.
std::vector<int> partition_blocks(BlockForest& forest, int ranks);

/// Summed block weight per rank under `owners`.
std::vector<double> rank_weights(const BlockForest& forest, const std::vector<int>& owners, int ranks);

/// max / mean of the per-rank weights; 1 for a perfectly even split and for
/// an all-zero load.
double imbalance(const std::vector<double>& per_rank);

/// Owner of each leaf under a Cartesian rank grid: the rank whose subdomain
/// holds the leaf's center.
std::vector<int> grid_owners(const BlockForest& forest, const std::array<int, 3>& dims);

}  // namespace nanopair
