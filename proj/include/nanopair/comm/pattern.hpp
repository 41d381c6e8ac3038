#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nanopair/core/aabb.hpp"

namespace nanopair {

/// Exchange condition: true when a particle at `p` must move to the peer;
/// `out` receives the (PBC-corrected) position it arrives with.
using ExchangeCond = std::function<bool(const Vec3& p, Vec3& out)>;
/// Border condition: calls `emit(shift)` once per periodic image p + shift the
/// peer needs as a ghost.
using BorderCond = std::function<void(const Vec3& p, const std::function<void(const Vec3&)>& emit)>;

struct PeerEntry {
  int send_rank = 0;
  int recv_rank = 0;
  int channel = 0;  // distinguishes several messages between one rank pair
  ExchangeCond exchange;
  BorderCond border;
};

/// Peers processed together. Later stages see ghosts created by earlier ones,
/// which is how the six-stencil pattern forwards edge and corner ghosts.
struct CommStage {
  std::function<bool(const Vec3&)> stays;  // exchange: particle needs no routing in this stage
  std::vector<PeerEntry> peers;
};

struct CommPattern {
  std::vector<CommStage> stages;
  std::function<bool(const Vec3&)> owns;  // final ownership predicate
  AABB grid_region;                       // region the local cell grid must cover
};

/// Cartesian rank grid helpers.
struct RankGrid {
  std::array<int, 3> dims{1, 1, 1};

  int size() const noexcept { return dims[0] * dims[1] * dims[2]; }
  std::array<int, 3> coords(int rank) const noexcept {
    return {rank % dims[0], (rank / dims[0]) % dims[1], rank / (dims[0] * dims[1])};
  }
  int rank_of(std::array<int, 3> c) const noexcept {
    for (int d = 0; d < 3; ++d) c[d] = ((c[d] % dims[d]) + dims[d]) % dims[d];
    return c[0] + dims[0] * (c[1] + dims[1] * c[2]);
  }
  /// Subdomain of `rank`; the upper boundary of the last slab is exactly global.max.
  AABB box(int rank, const AABB& global) const;
};

/// Six-neighbor stencil: three stages (x, y, z), each talking to the next and
/// previous rank along that axis. Throws ConfigError when the grid does not
/// match `ranks` or a subdomain is thinner than `spacing`.
CommPattern six_stencil_pattern(const std::array<int, 3>& dims, int ranks, int this_rank,
                                const AABB& global, double spacing);

/// A neighbor rank and the blocks it owns.
struct NeighborBlocks {
  int rank = 0;
  std::vector<AABB> blocks;
};

/// Ownership after load balancing: a set of blocks plus the ranks that own
/// blocks within `spacing` (under PBC) of any of them.
struct RankDomain {
  int rank = 0;
  std::vector<AABB> blocks;
  AABB union_aabb = AABB::empty();
  AABB grid_aabb = AABB::empty();  // cropped region used only for cell-grid sizing
  std::vector<NeighborBlocks> neighbors;
  double spacing = 0.0;

  bool owns(const Vec3& p) const;
};

/// Single-stage pattern with one peer per neighbor rank; exchange tests
/// PBC-corrected membership in the peer's blocks, border tests distance of
/// each periodic image to the peer's blocks against `spacing`.
CommPattern block_neighborhood_pattern(const RankDomain& domain, const AABB& global, double spacing);

/// The 27 periodic image offsets of `global`, zero shift first.
std::array<Vec3, 27> image_shifts(const AABB& global);

/// Ranks owning any of `blocks` (owner per block) within `spacing` of one of
/// `mine`, considering periodic images. Includes `me` only for s != 0 images.
std::vector<NeighborBlocks> neighbor_table(int me, const std::vector<AABB>& mine,
                                           const std::vector<AABB>& blocks,
                                           const std::vector<int>& owners, const AABB& global,
                                           double spacing);

}  // namespace nanopair
