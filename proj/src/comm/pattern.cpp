#include "nanopair/comm/pattern.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "nanopair/core/errors.hpp"
#include "nanopair/core/periodic.hpp"

namespace nanopair {

namespace {

double wrap_component(double v, double lo, double hi) {
  Vec3 p{v, 0.0, 0.0};
  const AABB line{{lo, 0.0, 0.0}, {hi, 1.0, 1.0}};
  return pbc_correct(p, line).x;
}

}  // namespace

AABB RankGrid::box(int rank, const AABB& global) const {
  const auto c = coords(rank);
  const Vec3 e = global.extent();
  AABB b;
  for (int d = 0; d < 3; ++d) {
    b.min[d] = global.min[d] + e[d] * c[d] / dims[d];
    b.max[d] = c[d] + 1 == dims[d] ? global.max[d] : global.min[d] + e[d] * (c[d] + 1) / dims[d];
  }
  return b;
}

CommPattern six_stencil_pattern(const std::array<int, 3>& dims, int ranks, int this_rank,
                                const AABB& global, double spacing) {
  const RankGrid grid{dims};
  if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0 || grid.size() != ranks)
    throw ConfigError("rank_grid", "product " + std::to_string(grid.size()) +
                                       " does not match " + std::to_string(ranks) + " ranks");
  const AABB box = grid.box(this_rank, global);
  for (int d = 0; d < 3; ++d)
    if (box.max[d] - box.min[d] < spacing)
      throw ConfigError("rank_grid", "subdomain width " + std::to_string(box.max[d] - box.min[d]) +
                                         " is smaller than the ghost spacing " +
                                         std::to_string(spacing));

  const auto me = grid.coords(this_rank);
  const Vec3 len = global.extent();

  CommPattern pattern;
  pattern.owns = [box](const Vec3& p) { return box.contains(p); };
  pattern.grid_region = box;

  for (int d = 0; d < 3; ++d) {
    auto up = me, down = me;
    ++up[d];
    --down[d];
    const int next = grid.rank_of(up);
    const int prev = grid.rank_of(down);
    const bool at_top = me[d] == dims[d] - 1;
    const bool at_bottom = me[d] == 0;
    const double lo = global.min[d], hi = global.max[d];
    Vec3 down_shift{}, up_shift{};
    if (at_top) down_shift[d] = -len[d];
    if (at_bottom) up_shift[d] = len[d];

    CommStage stage;
    stage.stays = [box, d](const Vec3& p) { return p[d] >= box.min[d] && p[d] < box.max[d]; };

    PeerEntry to_next;
    to_next.send_rank = next;
    to_next.recv_rank = prev;
    to_next.channel = 0;
    to_next.exchange = [box, d, lo, hi](const Vec3& p, Vec3& out) {
      if (!(p[d] >= box.max[d])) return false;
      out = p;
      out[d] = wrap_component(p[d], lo, hi);
      return true;
    };
    to_next.border = [box, d, spacing, down_shift](const Vec3& p, const auto& emit) {
      if (p[d] > box.max[d] - spacing) emit(down_shift);
    };

    PeerEntry to_prev;
    to_prev.send_rank = prev;
    to_prev.recv_rank = next;
    to_prev.channel = 1;
    to_prev.exchange = [box, d, lo, hi](const Vec3& p, Vec3& out) {
      if (!(p[d] < box.min[d])) return false;
      out = p;
      out[d] = wrap_component(p[d], lo, hi);
      return true;
    };
    to_prev.border = [box, d, spacing, up_shift](const Vec3& p, const auto& emit) {
      if (p[d] < box.min[d] + spacing) emit(up_shift);
    };

    stage.peers.push_back(std::move(to_next));
    stage.peers.push_back(std::move(to_prev));
    pattern.stages.push_back(std::move(stage));
  }
  return pattern;
}

bool RankDomain::owns(const Vec3& p) const {
  return std::any_of(blocks.begin(), blocks.end(), [&](const AABB& b) { return b.contains(p); });
}

std::array<Vec3, 27> image_shifts(const AABB& global) {
  const Vec3 len = global.extent();
  std::array<Vec3, 27> out{};
  int k = 1;
  for (int sz = -1; sz <= 1; ++sz)
    for (int sy = -1; sy <= 1; ++sy)
      for (int sx = -1; sx <= 1; ++sx) {
        if (sx == 0 && sy == 0 && sz == 0) continue;
        out[k++] = {sx * len.x, sy * len.y, sz * len.z};
      }
  return out;
}

std::vector<NeighborBlocks> neighbor_table(int me, const std::vector<AABB>& mine,
                                           const std::vector<AABB>& blocks,
                                           const std::vector<int>& owners, const AABB& global,
                                           double spacing) {
  const auto shifts = image_shifts(global);
  const double s2 = spacing * spacing;
  std::map<int, std::vector<AABB>> by_rank;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int owner = owners[b];
    if (owner < 0) continue;
    bool near = false;
    for (std::size_t k = 0; k < shifts.size() && !near; ++k) {
      if (k == 0 && owner == me) continue;
      const AABB img = blocks[b].shifted(shifts[k]);
      for (const AABB& m : mine)
        if (distance_sq(img, m) <= s2) {
          near = true;
          break;
        }
    }
    if (near) by_rank[owner].push_back(blocks[b]);
  }
  std::vector<NeighborBlocks> out;
  for (auto& [rank, bl] : by_rank) out.push_back({rank, std::move(bl)});
  return out;
}

CommPattern block_neighborhood_pattern(const RankDomain& domain, const AABB& global,
                                       double spacing) {
  CommPattern pattern;
  pattern.owns = [blocks = domain.blocks](const Vec3& p) {
    return std::any_of(blocks.begin(), blocks.end(), [&](const AABB& b) { return b.contains(p); });
  };
  pattern.grid_region = domain.grid_aabb;

  CommStage stage;
  stage.stays = pattern.owns;
  const auto shifts = image_shifts(global);
  const double s2 = spacing * spacing;
  for (const auto& nb : domain.neighbors) {
    PeerEntry e;
    e.send_rank = nb.rank;
    e.recv_rank = nb.rank;
    e.channel = 0;
    e.exchange = [blocks = nb.blocks, global](const Vec3& p, Vec3& out) {
      const Vec3 q = pbc_correct(p, global);
      for (const AABB& b : blocks)
        if (b.contains(q)) {
          out = q;
          return true;
        }
      return false;
    };
    const bool self = nb.rank == domain.rank;
    e.border = [blocks = nb.blocks, shifts, s2, self](const Vec3& p, const auto& emit) {
      for (std::size_t k = 0; k < shifts.size(); ++k) {
        if (self && k == 0) continue;
        const Vec3 img = p + shifts[k];
        for (const AABB& b : blocks)
          if (distance_sq(b, img) < s2) {
            emit(shifts[k]);
            break;
          }
      }
    };
    stage.peers.push_back(std::move(e));
  }
  pattern.stages.push_back(std::move(stage));
  return pattern;
}

}  // namespace nanopair
