#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nanopair/balance/forest.hpp"
#include "nanopair/comm/rank_world.hpp"
#include "nanopair/core/errors.hpp"
#include "nanopair/particles/store.hpp"

namespace nanopair {

/// Per-leaf particle counts of this rank's store: locals inside a leaf are
/// computational weight; ghosts inside a leaf are communication weight, but
/// only for leaves this rank currently owns (`owners[leaf] == me`), since the
/// owner is the one holding that halo. Returns 2 * leaves values.
template <ArrayLayout L>
std::vector<double> local_block_counts(const BlockForest& forest, const ParticleStore<L>& store,
                                       const std::vector<int>& owners, int me) {
  if (owners.size() != forest.size()) throw std::invalid_argument("one owner per leaf expected");
  std::vector<double> counts(2 * forest.size(), 0.0);
  for (int i = 0; i < store.size(); ++i) {
    const int b = forest.locate(store.position(i));
    if (b < 0) continue;  // periodic-image ghosts outside the domain
    const bool ghost = i >= store.n_local();
    if (ghost && owners[b] != me) continue;
    counts[2 * static_cast<std::size_t>(b) + (ghost ? 1 : 0)] += 1.0;
  }
  return counts;
}

/// Sets the weights of every leaf to the counts summed over ranks. Collective.
template <ArrayLayout L>
void compute_weights(RankWorld& world, BlockForest& forest, const ParticleStore<L>& store,
                     const std::vector<int>& owners) {
  const std::vector<double> total =
      world.allreduce_sum(local_block_counts(forest, store, owners, world.rank()));
  for (std::size_t b = 0; b < forest.size(); ++b) {
    forest.leaves()[b].computational_weight = total[2 * b];
    forest.leaves()[b].communication_weight = total[2 * b + 1];
  }
}

struct MigrationStats {
  int sent = 0;
  int received = 0;
  int messages = 0;
};

/// Moves every local particle to the owner of the leaf containing it. A P x P
/// count matrix is agreed on first so only rank pairs with traffic exchange
/// records. When `previous` equals the current owners nothing is exchanged;
/// pass it only when it describes where particles actually live.
/// Ghosts are dropped. Collective.
template <ArrayLayout L>
MigrationStats migrate_blocks(RankWorld& world, const BlockForest& forest, ParticleStore<L>& store,
                              const std::optional<std::vector<int>>& previous = std::nullopt) {
  store.clear_ghosts();
  MigrationStats stats;
  if (previous && *previous == forest.owners()) return stats;

  const int ranks = world.size();
  const int me = world.rank();
  std::vector<std::vector<double>> outgoing(ranks);
  std::vector<int> leaving;
  for (int i = 0; i < store.n_local(); ++i) {
    const Vec3 p = store.position(i);
    const int b = forest.locate(p);
    if (b < 0)
      throw ProtocolError("rank " + std::to_string(me) + ": particle outside every block");
    const int dst = forest.leaves()[b].owner;
    if (dst == me) continue;
    const Vec3 v = store.velocity(i);
    outgoing[dst].insert(outgoing[dst].end(), {p.x, p.y, p.z, v.x, v.y, v.z});
    leaving.push_back(i);
  }
  for (auto it = leaving.rbegin(); it != leaving.rend(); ++it) store.remove_local(*it);

  std::vector<double> matrix(static_cast<std::size_t>(ranks) * ranks, 0.0);
  for (int r = 0; r < ranks; ++r) matrix[me * ranks + r] = static_cast<double>(outgoing[r].size() / 6);
  matrix = world.allreduce_sum(matrix);

  const std::uint64_t tag = world.next_tag();
  for (int r = 0; r < ranks; ++r) {
    if (r == me || outgoing[r].empty()) continue;
    world.send(r, tag, encode_record(RecordKind::Migration, 6, outgoing[r]));
    stats.sent += static_cast<int>(outgoing[r].size() / 6);
    ++stats.messages;
  }
  for (int r = 0; r < ranks; ++r) {
    const auto expected = static_cast<std::size_t>(matrix[r * ranks + me]);
    if (r == me || expected == 0) continue;
    WireRecord rec = decode_record(world.recv(r, tag));
    if (rec.kind != RecordKind::Migration || rec.stride != 6 || rec.count() != expected)
      throw ProtocolError("rank " + std::to_string(me) + ": migration record from rank " +
                          std::to_string(r) + " does not match the agreed count");
    for (std::size_t k = 0; k < rec.count(); ++k) {
      const double* row = rec.values.data() + 6 * k;
      store.append_local({row[0], row[1], row[2]}, {row[3], row[4], row[5]});
    }
    stats.received += static_cast<int>(rec.count());
  }
  return stats;
}

}  // namespace nanopair
