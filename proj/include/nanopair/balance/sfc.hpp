#pragma once

#include <cstdint>

namespace nanopair {

/// Bit-interleaved (z-order) key of a cell on a 2^depth grid; bit 3k holds
/// bit k of ix, bit 3k+1 of iy, bit 3k+2 of iz. Throws std::out_of_range for
/// coordinates outside [0, 2^depth) or depth > 21.
std::uint64_t morton_key(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int depth);

/// 3D Hilbert index of a cell on a 2^depth grid (Skilling's transpose
/// construction). Consecutive keys are face-adjacent cells.
std::uint64_t hilbert_key(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int depth);

}  // namespace nanopair
