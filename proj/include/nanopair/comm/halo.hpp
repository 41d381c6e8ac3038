#pragma once

#include <string>
#include <vector>

#include "nanopair/comm/pattern.hpp"
#include "nanopair/comm/rank_world.hpp"
#include "nanopair/particles/store.hpp"

namespace nanopair {

/// One border message: which particles this rank sends to `send_rank` (with
/// the periodic shift applied to each) and where the ghosts received from
/// `recv_rank` live locally.
struct BorderSwap {
  int stage = 0;
  int send_rank = 0;
  int recv_rank = 0;
  int channel = 0;
  std::vector<int> send_indices;
  std::vector<Vec3> shifts;
  int recv_first = 0;
  int recv_count = 0;
};

/// Result of border definition, replayed by every synchronize() until the
/// next exchange. Ghost i of a swap has GhostSource{recv_rank, i}: the slot in
/// the sender's send list.
struct BorderPlan {
  std::vector<BorderSwap> swaps;
  int stage_count = 0;
  int n_local = 0;
  int n_ghost = 0;
  bool with_velocity = false;
};

namespace detail {

inline std::string describe(const Vec3& p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
}

template <ArrayLayout L>
std::vector<double> pack_border(const ParticleStore<L>& store, const BorderSwap& sw,
                                bool with_velocity) {
  std::vector<double> rows;
  rows.reserve(sw.send_indices.size() * (with_velocity ? 6 : 3));
  for (std::size_t k = 0; k < sw.send_indices.size(); ++k) {
    const Vec3 p = store.position(sw.send_indices[k]) + sw.shifts[k];
    rows.insert(rows.end(), {p.x, p.y, p.z});
    if (with_velocity) {
      const Vec3 v = store.velocity(sw.send_indices[k]);
      rows.insert(rows.end(), {v.x, v.y, v.z});
    }
  }
  return rows;
}

}  // namespace detail

/// Moves every local particle that left this rank's region to its owner.
/// Ghosts are discarded first. Positions are PBC-corrected in transit and
/// velocities travel along. Afterwards every local satisfies pattern.owns.
template <ArrayLayout L>
void exchange(RankWorld& world, ParticleStore<L>& store, const CommPattern& pattern) {
  store.clear_ghosts();
  std::vector<double> buf;
  for (const CommStage& stage : pattern.stages) {
    const std::uint64_t tag = world.next_tag();
    const std::size_t npeers = stage.peers.size();
    std::vector<std::vector<double>> outgoing(npeers);
    std::vector<int> leaving;

    for (int i = 0; i < store.n_local(); ++i) {
      const Vec3 p = store.position(i);
      if (stage.stays(p)) continue;
      bool routed = false;
      for (std::size_t k = 0; k < npeers && !routed; ++k) {
        Vec3 q;
        if (!stage.peers[k].exchange(p, q)) continue;
        const Vec3 v = store.velocity(i);
        outgoing[k].insert(outgoing[k].end(), {q.x, q.y, q.z, v.x, v.y, v.z});
        leaving.push_back(i);
        routed = true;
      }
      if (!routed)
        throw ProtocolError("rank " + std::to_string(world.rank()) + ": particle at " +
                            detail::describe(p) + " is owned by no neighbor");
    }
    for (auto it = leaving.rbegin(); it != leaving.rend(); ++it) store.remove_local(*it);

    std::vector<std::vector<double>> self_rows;
    for (std::size_t k = 0; k < npeers; ++k) {
      const PeerEntry& e = stage.peers[k];
      if (e.send_rank == world.rank())
        self_rows.push_back(std::move(outgoing[k]));
      else
        world.send(e.send_rank, tag + e.channel, encode_record(RecordKind::Exchange, 6, outgoing[k]));
    }
    std::size_t self_k = 0;
    for (std::size_t k = 0; k < npeers; ++k) {
      const PeerEntry& e = stage.peers[k];
      std::vector<double> rows;
      if (e.recv_rank == world.rank()) {
        // A self-send on channel c is matched by the self-receive on channel c.
        rows = std::move(self_rows.at(self_k++));
      } else {
        WireRecord rec = decode_record(world.recv(e.recv_rank, tag + e.channel));
        if (rec.kind != RecordKind::Exchange || rec.stride != 6)
          throw ProtocolError("unexpected record in exchange");
        rows = std::move(rec.values);
      }
      for (std::size_t r = 0; r + 5 < rows.size(); r += 6)
        store.append_local({rows[r], rows[r + 1], rows[r + 2]},
                           {rows[r + 3], rows[r + 4], rows[r + 5]});
    }
  }
  for (int i = 0; i < store.n_local(); ++i) {
    const Vec3 p = store.position(i);
    if (!pattern.owns(p))
      throw ProtocolError("rank " + std::to_string(world.rank()) + ": particle at " +
                          detail::describe(p) + " is not owned after exchange");
  }
}

/// Determines, stage by stage, which particles (locals and ghosts received in
/// earlier stages) each peer needs as ghosts, materializes the received ghosts
/// and returns the plan used by synchronize().
template <ArrayLayout L>
BorderPlan define_borders(RankWorld& world, ParticleStore<L>& store, const CommPattern& pattern,
                          bool with_velocity) {
  store.clear_ghosts();
  BorderPlan plan;
  plan.with_velocity = with_velocity;
  plan.stage_count = static_cast<int>(pattern.stages.size());
  plan.n_local = store.n_local();
  const int stride = with_velocity ? 6 : 3;

  for (int s = 0; s < plan.stage_count; ++s) {
    const CommStage& stage = pattern.stages[s];
    const std::uint64_t tag = world.next_tag();
    const int scan = store.size();
    const std::size_t first_swap = plan.swaps.size();

    for (const PeerEntry& e : stage.peers) {
      BorderSwap sw;
      sw.stage = s;
      sw.send_rank = e.send_rank;
      sw.recv_rank = e.recv_rank;
      sw.channel = e.channel;
      for (int i = 0; i < scan; ++i) {
        e.border(store.position(i), [&](const Vec3& shift) {
          sw.send_indices.push_back(i);
          sw.shifts.push_back(shift);
        });
      }
      plan.swaps.push_back(std::move(sw));
    }

    auto pack = [&](const BorderSwap& sw) { return detail::pack_border(store, sw, with_velocity); };

    std::vector<std::vector<double>> self_rows;
    for (std::size_t w = first_swap; w < plan.swaps.size(); ++w) {
      const BorderSwap& sw = plan.swaps[w];
      if (sw.send_rank == world.rank())
        self_rows.push_back(pack(sw));
      else
        world.send(sw.send_rank, tag + sw.channel, encode_record(RecordKind::Border, stride, pack(sw)));
    }
    std::size_t self_k = 0;
    for (std::size_t w = first_swap; w < plan.swaps.size(); ++w) {
      BorderSwap& sw = plan.swaps[w];
      std::vector<double> rows;
      if (sw.recv_rank == world.rank()) {
        rows = std::move(self_rows.at(self_k++));
      } else {
        WireRecord rec = decode_record(world.recv(sw.recv_rank, tag + sw.channel));
        if (rec.kind != RecordKind::Border || (rec.stride != stride && !rec.values.empty()))
          throw ProtocolError("unexpected record in border definition");
        rows = std::move(rec.values);
      }
      sw.recv_first = store.size();
      sw.recv_count = static_cast<int>(rows.size()) / stride;
      for (int k = 0; k < sw.recv_count; ++k) {
        const double* r = rows.data() + static_cast<std::size_t>(k) * stride;
        const Vec3 v = with_velocity ? Vec3{r[3], r[4], r[5]} : Vec3{};
        store.append_ghost({r[0], r[1], r[2]}, v, GhostSource{sw.recv_rank, k});
      }
    }
  }
  plan.n_ghost = store.n_ghost();
  return plan;
}

/// Refreshes every ghost from its source's current state using the shifts
/// fixed at border definition.
template <ArrayLayout L>
void synchronize(RankWorld& world, ParticleStore<L>& store, const BorderPlan& plan) {
  if (store.n_local() != plan.n_local || store.n_ghost() != plan.n_ghost)
    throw ProtocolError("rank " + std::to_string(world.rank()) +
                        ": border plan does not match the particle store");
  const int stride = plan.with_velocity ? 6 : 3;
  std::size_t w = 0;
  for (int s = 0; s < plan.stage_count; ++s) {
    const std::uint64_t tag = world.next_tag();
    const std::size_t first = w;
    while (w < plan.swaps.size() && plan.swaps[w].stage == s) ++w;

    auto pack = [&](const BorderSwap& sw) { return detail::pack_border(store, sw, plan.with_velocity); };

    std::vector<std::vector<double>> self_rows;
    for (std::size_t k = first; k < w; ++k) {
      const BorderSwap& sw = plan.swaps[k];
      if (sw.send_rank == world.rank())
        self_rows.push_back(pack(sw));
      else
        world.send(sw.send_rank, tag + sw.channel, encode_record(RecordKind::Sync, stride, pack(sw)));
    }
    std::size_t self_k = 0;
    for (std::size_t k = first; k < w; ++k) {
      const BorderSwap& sw = plan.swaps[k];
      std::vector<double> rows;
      if (sw.recv_rank == world.rank()) {
        rows = std::move(self_rows.at(self_k++));
      } else {
        WireRecord rec = decode_record(world.recv(sw.recv_rank, tag + sw.channel));
        if (rec.kind != RecordKind::Sync || (rec.stride != stride && !rec.values.empty()))
          throw ProtocolError("unexpected record in synchronization");
        rows = std::move(rec.values);
      }
      if (static_cast<int>(rows.size()) != sw.recv_count * stride)
        throw ProtocolError("rank " + std::to_string(world.rank()) +
                            ": synchronization size differs from the border plan");
      for (int g = 0; g < sw.recv_count; ++g) {
        const double* r = rows.data() + static_cast<std::size_t>(g) * stride;
        store.set_position(sw.recv_first + g, {r[0], r[1], r[2]});
        if (plan.with_velocity) store.set_velocity(sw.recv_first + g, {r[3], r[4], r[5]});
      }
    }
  }
}

}  // namespace nanopair
