#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nanopair/comm/transport.hpp"
#include "nanopair/comm/wire.hpp"
#include "nanopair/core/aabb.hpp"

namespace nanopair {

/// One rank's view of the simulated world. Every rank must issue collective
/// operations in the same order; each collective draws a fresh tag so stray
/// messages from different epochs can never match.
class RankWorld {
 public:
  RankWorld(Transport& transport, int rank, const AABB& global)
      : transport_(&transport), rank_(rank), global_(global) {}

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return transport_->size(); }
  const AABB& global() const noexcept { return global_; }
  Transport& transport() noexcept { return *transport_; }

  /// Tag base for the next collective; channels 0..15 are free below it.
  std::uint64_t next_tag() noexcept { return (++sequence_) << 4; }

  void send(int dst, std::uint64_t tag, Bytes payload) {
    transport_->send(rank_, dst, tag, std::move(payload));
  }
  Bytes recv(int src, std::uint64_t tag) { return transport_->recv(src, rank_, tag); }
  void barrier() { transport_->barrier(rank_); }

  /// Element-wise sum over ranks, combined in rank order on every rank.
  std::vector<double> allreduce_sum(const std::vector<double>& local) {
    const std::uint64_t tag = next_tag();
    for (int r = 0; r < size(); ++r)
      if (r != rank_) send(r, tag, encode_f64_array(local));
    std::vector<double> total(local.size(), 0.0);
    for (int r = 0; r < size(); ++r) {
      const std::vector<double> part = r == rank_ ? local : decode_f64_array(recv(r, tag));
      if (part.size() != local.size()) throw ProtocolError("allreduce length mismatch");
      for (std::size_t k = 0; k < total.size(); ++k) total[k] += part[k];
    }
    return total;
  }

  double allreduce_sum(double v) { return allreduce_sum(std::vector<double>{v})[0]; }

  double allreduce_max(double v) {
    const auto all = allgather(v);
    double m = all[0];
    for (double x : all) m = std::max(m, x);
    return m;
  }

  /// One value per rank, indexed by rank.
  std::vector<double> allgather(double v) {
    std::vector<double> slot(size(), 0.0);
    slot[rank_] = v;
    return allreduce_sum(slot);
  }

 private:
  Transport* transport_;
  int rank_;
  AABB global_;
  std::uint64_t sequence_ = 0;
};

}  // namespace nanopair
