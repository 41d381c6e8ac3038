#include "nanopair/comm/transport.hpp"

#include <exception>
#include <string>
#include <thread>

namespace nanopair {

Transport::Transport(int ranks, bool sequential)
    : ranks_(ranks), sequential_(sequential), finished_(ranks, false) {
  if (ranks <= 0) throw ConfigError("ranks", "must be positive");
}

template <class Ready>
void Transport::block_until(std::unique_lock<std::mutex>& lk, int me, Ready ready) {
  for (;;) {
    if (aborted_) throw TransportAborted("transport aborted by a failing rank");
    const bool my_turn = !sequential_ || baton_ == me;
    if (my_turn && ready()) {
      stalls_ = 0;
      return;
    }
    if (sequential_ && baton_ == me) {
      if (++stalls_ > 2 * ranks_ + 2) {
        aborted_ = true;
        cv_.notify_all();
        throw ProtocolError("deadlock: every rank is blocked (rank " + std::to_string(me) + ")");
      }
      pass_baton(me);
    }
    cv_.wait(lk);
  }
}

void Transport::pass_baton(int from) {
  for (int k = 1; k <= ranks_; ++k) {
    const int next = (from + k) % ranks_;
    if (!finished_[next]) {
      baton_ = next;
      break;
    }
  }
  cv_.notify_all();
}

void Transport::send(int src, int dst, std::uint64_t tag, Bytes payload) {
  std::lock_guard lk(mutex_);
  if (aborted_) throw TransportAborted("transport aborted by a failing rank");
  ++messages_;
  bytes_ += payload.size();
  auto [it, inserted] = boxes_.try_emplace(Key{src, dst, tag}, std::move(payload));
  if (!inserted)
    throw ProtocolError("duplicate message " + std::to_string(src) + " -> " + std::to_string(dst) +
                        " tag " + std::to_string(tag));
  stalls_ = 0;
  cv_.notify_all();
}

Bytes Transport::recv(int src, int dst, std::uint64_t tag) {
  std::unique_lock lk(mutex_);
  const Key key{src, dst, tag};
  block_until(lk, dst, [&] { return boxes_.count(key) != 0; });
  auto node = boxes_.extract(key);
  return std::move(node.mapped());
}

void Transport::barrier(int rank) {
  std::unique_lock lk(mutex_);
  const std::uint64_t gen = barrier_generation_;
  if (++barrier_arrived_ == ranks_) {
    barrier_arrived_ = 0;
    ++barrier_generation_;
    stalls_ = 0;
    cv_.notify_all();
    return;
  }
  block_until(lk, rank, [&] { return barrier_generation_ != gen; });
}

void Transport::abort() {
  std::lock_guard lk(mutex_);
  aborted_ = true;
  cv_.notify_all();
}

void Transport::enter(int rank) {
  if (!sequential_) return;
  std::unique_lock lk(mutex_);
  block_until(lk, rank, [] { return true; });
}

void Transport::leave(int rank) {
  std::lock_guard lk(mutex_);
  finished_[rank] = true;
  if (sequential_ && baton_ == rank) pass_baton(rank);
  cv_.notify_all();
}

std::uint64_t Transport::messages_sent() const {
  std::lock_guard lk(mutex_);
  return messages_;
}

std::uint64_t Transport::bytes_sent() const {
  std::lock_guard lk(mutex_);
  return bytes_;
}

std::size_t Transport::pending() const {
  std::lock_guard lk(mutex_);
  return boxes_.size();
}

void run_ranks(Transport& transport, const std::function<void(int)>& body) {
  const int n = transport.size();
  std::vector<std::exception_ptr> errors(n);
  std::vector<char> induced(n, 0);
  {
    std::vector<std::jthread> workers;
    workers.reserve(n);
    for (int r = 0; r < n; ++r) {
      workers.emplace_back([&, r] {
        try {
          transport.enter(r);
          body(r);
        } catch (const TransportAborted&) {
          errors[r] = std::current_exception();
          induced[r] = 1;
        } catch (...) {
          errors[r] = std::current_exception();
          transport.abort();
        }
        transport.leave(r);
      });
    }
  }
  for (int r = 0; r < n; ++r)
    if (errors[r] && !induced[r]) std::rethrow_exception(errors[r]);
  for (int r = 0; r < n; ++r)
    if (errors[r]) std::rethrow_exception(errors[r]);
}

}  // namespace nanopair
