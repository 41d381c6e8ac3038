#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "nanopair/core/vec3.hpp"

namespace nanopair {

// Layout descriptors map a logical (x, y) coordinate of a size_x by size_y array
// onto a linear offset. They are stateless types so every access is resolved at
// compile time; `atomic` selects whether add() is linearizable.
namespace layout {

/// x-major: the y entries of one x are contiguous (AoS for N x 3 vectors).
template <bool Atomic = false>
struct RowMajor {
  static constexpr bool atomic = Atomic;
  static constexpr std::size_t capacity(std::size_t size_x, std::size_t size_y) {
    return size_x * size_y;
  }
  static constexpr std::size_t index(std::size_t /*size_x*/, std::size_t size_y, std::size_t x,
                                     std::size_t y) {
    return x * size_y + y;
  }
};

/// y-major: all x for one y are contiguous (SoA for N x 3 vectors).
template <bool Atomic = false>
struct ColumnMajor {
  static constexpr bool atomic = Atomic;
  static constexpr std::size_t capacity(std::size_t size_x, std::size_t size_y) {
    return size_x * size_y;
  }
  static constexpr std::size_t index(std::size_t size_x, std::size_t /*size_y*/, std::size_t x,
                                     std::size_t y) {
    return y * size_x + x;
  }
};

/// Clusters of `Cluster` consecutive x stored SoA-style, clusters laid out AoS (AoSoA).
template <std::size_t Cluster, bool Atomic = false>
struct Clustered {
  static_assert(Cluster > 0 && std::has_single_bit(Cluster), "cluster size must be a power of two");
  static constexpr bool atomic = Atomic;
  static constexpr std::size_t cluster_size = Cluster;
  static constexpr std::size_t shift = std::countr_zero(Cluster);
  static constexpr std::size_t mask = Cluster - 1;

  // Rows are padded up to a whole cluster.
  static constexpr std::size_t capacity(std::size_t size_x, std::size_t size_y) {
    return ((size_x + mask) >> shift) * Cluster * size_y;
  }
  static constexpr std::size_t index(std::size_t /*size_x*/, std::size_t size_y, std::size_t x,
                                     std::size_t y) {
    const std::size_t i = x >> shift;
    const std::size_t j = x & mask;
    return Cluster * (i * size_y + y) + j;
  }
};

template <class L>
struct with_atomic;
template <bool A>
struct with_atomic<RowMajor<A>> {
  template <bool B>
  using type = RowMajor<B>;
};
template <bool A>
struct with_atomic<ColumnMajor<A>> {
  template <bool B>
  using type = ColumnMajor<B>;
};
template <std::size_t C, bool A>
struct with_atomic<Clustered<C, A>> {
  template <bool B>
  using type = Clustered<C, B>;
};

/// The same index function with the atomic flag replaced.
template <class L, bool Atomic>
using rebind_atomic = typename with_atomic<L>::template type<Atomic>;

}  // namespace layout

template <class L>
concept ArrayLayout = requires(std::size_t n) {
  { L::atomic } -> std::convertible_to<bool>;
  { L::capacity(n, n) } -> std::same_as<std::size_t>;
  { L::index(n, n, n, n) } -> std::same_as<std::size_t>;
};

/// A 2D array whose linear index function is the compile-time parameter `L`.
template <class T, ArrayLayout L>
class Array2D {
 public:
  using value_type = T;
  using layout_type = L;

  Array2D() = default;
  Array2D(std::size_t size_x, std::size_t size_y)
      : size_x_(size_x), size_y_(size_y), data_(L::capacity(size_x, size_y), T{}) {}

  std::size_t size_x() const noexcept { return size_x_; }
  std::size_t size_y() const noexcept { return size_y_; }
  std::size_t capacity() const noexcept { return data_.size(); }

  std::size_t index(std::size_t x, std::size_t y) const noexcept {
    assert(x < size_x_ && y < size_y_);
    return L::index(size_x_, size_y_, x, y);
  }

  T get(std::size_t x, std::size_t y) const noexcept { return data_[index(x, y)]; }
  void set(std::size_t x, std::size_t y, T v) noexcept { data_[index(x, y)] = v; }

  void add(std::size_t x, std::size_t y, T v) noexcept {
    T& slot = data_[index(x, y)];
    if constexpr (L::atomic) {
      std::atomic_ref<T>(slot).fetch_add(v, std::memory_order_relaxed);
    } else {
      slot += v;
    }
  }

  /// Changes size_x, keeping the logical contents of the surviving rows.
  void resize_x(std::size_t new_size_x) {
    if (new_size_x == size_x_) return;
    Array2D next(new_size_x, size_y_);
    const std::size_t keep = std::min(size_x_, new_size_x);
    for (std::size_t x = 0; x < keep; ++x)
      for (std::size_t y = 0; y < size_y_; ++y) next.set(x, y, get(x, y));
    *this = std::move(next);
  }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  std::span<const T> raw() const noexcept { return data_; }
  std::span<T> raw() noexcept { return data_; }

 private:
  std::size_t size_x_ = 0;
  std::size_t size_y_ = 0;
  std::vector<T> data_;
};

template <ArrayLayout L>
using RealArray = Array2D<double, L>;

template <ArrayLayout L>
Vec3 get_vec3(const RealArray<L>& a, std::size_t i) noexcept {
  return {a.get(i, 0), a.get(i, 1), a.get(i, 2)};
}

template <ArrayLayout L>
void set_vec3(RealArray<L>& a, std::size_t i, const Vec3& v) noexcept {
  a.set(i, 0, v.x);
  a.set(i, 1, v.y);
  a.set(i, 2, v.z);
}

template <ArrayLayout L>
void add_vec3(RealArray<L>& a, std::size_t i, const Vec3& v) noexcept {
  a.add(i, 0, v.x);
  a.add(i, 1, v.y);
  a.add(i, 2, v.z);
}

}  // namespace nanopair
