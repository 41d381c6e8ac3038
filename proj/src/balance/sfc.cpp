#include "nanopair/balance/sfc.hpp"

#include <stdexcept>
#include <string>

namespace nanopair {

namespace {

void check(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int depth) {
  if (depth < 0 || depth > 21) throw std::out_of_range("curve depth " + std::to_string(depth));
  const std::uint64_t n = std::uint64_t{1} << depth;
  if (ix >= n || iy >= n || iz >= n)
    throw std::out_of_range("cell (" + std::to_string(ix) + ", " + std::to_string(iy) + ", " +
                            std::to_string(iz) + ") outside a 2^" + std::to_string(depth) +
                            " grid");
}

}  // namespace

std::uint64_t morton_key(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int depth) {
  check(ix, iy, iz, depth);
  std::uint64_t key = 0;
  for (int b = 0; b < depth; ++b) {
    key |= static_cast<std::uint64_t>((ix >> b) & 1u) << (3 * b);
    key |= static_cast<std::uint64_t>((iy >> b) & 1u) << (3 * b + 1);
    key |= static_cast<std::uint64_t>((iz >> b) & 1u) << (3 * b + 2);
  }
  return key;
}

std::uint64_t hilbert_key(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int depth) {
  check(ix, iy, iz, depth);
  if (depth == 0) return 0;
  std::uint32_t x[3] = {ix, iy, iz};
  const std::uint32_t top = 1u << (depth - 1);

  // Inverse undo excess work.
  for (std::uint32_t q = top; q > 1; q >>= 1) {
    const std::uint32_t p = q - 1;
    for (int i = 0; i < 3; ++i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        const std::uint32_t t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
  // Gray encode.
  x[1] ^= x[0];
  x[2] ^= x[1];
  std::uint32_t t = 0;
  for (std::uint32_t q = top; q > 1; q >>= 1)
    if (x[2] & q) t ^= q - 1;
  for (auto& v : x) v ^= t;

  // Read the transposed form most significant bit first.
  std::uint64_t key = 0;
  for (int b = depth - 1; b >= 0; --b)
    for (int i = 0; i < 3; ++i) key = (key << 1) | ((x[i] >> b) & 1u);
  return key;
}

}  // namespace nanopair
