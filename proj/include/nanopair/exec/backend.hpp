#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <utility>
#include <string>
#include <thread>
#include <vector>

namespace nanopair {

// Execution backends: a loop over [0, n) and an ordered reduction. Kernels are
// templates over the backend so the serial path carries no threading code.

struct SerialBackend {
  static constexpr bool parallel = false;

  template <class F>
  void loop_1d(int n, F&& f) const {
    for (int i = 0; i < n; ++i) f(i);
  }

  template <class T, class Map, class Op>
  T reduce(int n, T init, Op&& op, Map&& map) const {
    T acc = init;
    for (int i = 0; i < n; ++i) acc = op(acc, map(i));
    return acc;
  }
};

/// Static-chunked std::thread backend. Reductions combine per-chunk partials in
/// chunk order, so results depend on the thread count but not on scheduling.
class ThreadedBackend {
 public:
  static constexpr bool parallel = true;

  explicit ThreadedBackend(int threads = default_threads()) : threads_(std::max(1, threads)) {}

  int threads() const noexcept { return threads_; }

  /// Width from NANOPAIR_THREADS, else the hardware concurrency.
  static int default_threads() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NANOPAIR_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap > 0) return cap;
      } catch (...) {
      }
    }
    return static_cast<int>(hw);
  }

  template <class F>
  void loop_1d(int n, F&& f) const {
    const int chunks = std::min(threads_, std::max(1, n));
    loop_chunks(chunks, [&](int c) {
      const auto [lo, hi] = bounds(n, chunks, c);
      for (int i = lo; i < hi; ++i) f(i);
    });
  }

  template <class T, class Map, class Op>
  T reduce(int n, T init, Op&& op, Map&& map) const {
    if (n <= 0) return init;
    // n >= chunks, so no chunk is empty and init enters the fold only once.
    const int chunks = std::min(threads_, n);
    std::vector<T> partial(chunks, init);
    loop_chunks(chunks, [&](int c) {
      const auto [lo, hi] = bounds(n, chunks, c);
      T acc = map(lo);
      for (int i = lo + 1; i < hi; ++i) acc = op(acc, map(i));
      partial[c] = acc;
    });
    T acc = init;
    for (const T& p : partial) acc = op(acc, p);
    return acc;
  }

 private:
  static std::pair<int, int> bounds(int n, int chunks, int c) {
    const long lo = static_cast<long>(n) * c / chunks;
    const long hi = static_cast<long>(n) * (c + 1) / chunks;
    return {static_cast<int>(lo), static_cast<int>(hi)};
  }

  // Runs f(0..chunks) on separate threads; the first exception is rethrown
  // after all chunks finish.
  template <class F>
  void loop_chunks(int chunks, F&& f) const {
    if (chunks <= 1) {
      f(0);
      return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    {
      std::vector<std::jthread> workers;
      workers.reserve(chunks - 1);
      for (int c = 1; c < chunks; ++c) {
        workers.emplace_back([&, c] {
          try {
            f(c);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        });
      }
      try {
        f(0);
      } catch (...) {
        errors[0] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  int threads_;
};

}  // namespace nanopair
