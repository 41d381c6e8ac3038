#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "nanopair/core/errors.hpp"

namespace nanopair {

using Bytes = std::vector<std::byte>;

/// Raised in ranks that were blocked when another rank failed.
class TransportAborted : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

/// In-process message bus between simulated ranks. Messages are addressed by
/// (source, destination, tag); send never blocks, recv blocks until the
/// matching message arrives. In sequential mode only one rank runs at a time
/// and control passes round-robin whenever the running rank blocks, which
/// makes execution order reproducible for debugging.
class Transport {
 public:
  explicit Transport(int ranks, bool sequential = false);

  int size() const noexcept { return ranks_; }
  bool sequential() const noexcept { return sequential_; }

  void send(int src, int dst, std::uint64_t tag, Bytes payload);
  Bytes recv(int src, int dst, std::uint64_t tag);
  void barrier(int rank);

  /// Wakes every blocked rank with TransportAborted.
  void abort();

  // Worker lifecycle, used by run_ranks().
  void enter(int rank);
  void leave(int rank);

  std::uint64_t messages_sent() const;
  std::uint64_t bytes_sent() const;
  /// Messages sent and not yet received.
  std::size_t pending() const;

 private:
  using Key = std::tuple<int, int, std::uint64_t>;

  template <class Ready>
  void block_until(std::unique_lock<std::mutex>& lk, int me, Ready ready);
  void pass_baton(int from);

  const int ranks_;
  const bool sequential_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::map<Key, Bytes> boxes_;
  std::uint64_t messages_ = 0;
  std::uint64_t bytes_ = 0;
  bool aborted_ = false;

  int barrier_arrived_ = 0;
  std::uint64_t barrier_generation_ = 0;

  int baton_ = 0;
  int stalls_ = 0;
  std::vector<bool> finished_;
};

/// Runs body(rank) for every rank on its own thread and rethrows the first
/// failure (a rank's own error takes precedence over induced aborts).
void run_ranks(Transport& transport, const std::function<void(int)>& body);

}  // namespace nanopair
