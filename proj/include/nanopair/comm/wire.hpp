#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nanopair/comm/transport.hpp"

namespace nanopair {

/// Particle record kinds on the wire.
enum class RecordKind : std::uint8_t { Exchange = 0, Border = 1, Sync = 2, Migration = 3 };

/// Decoded particle record: `count` rows of `stride` (3 or 6) doubles.
struct WireRecord {
  RecordKind kind = RecordKind::Exchange;
  int stride = 3;
  std::vector<double> values;

  std::size_t count() const noexcept { return values.size() / static_cast<std::size_t>(stride); }
};

/// Little-endian layout: u8 kind, u32 particle count, count * stride f64.
Bytes encode_record(RecordKind kind, int stride, std::span<const double> values);

/// Inverse of encode_record. Throws ProtocolError on truncated or malformed
/// input; the stride of an empty record defaults to the kind's natural width.
WireRecord decode_record(std::span<const std::byte> bytes);

/// Natural width of a kind: positions only for border/sync, position and
/// velocity for exchange and migration.
int default_stride(RecordKind kind);

// Plain little-endian arrays for control collectives (not particle records).
Bytes encode_f64_array(std::span<const double> values);
std::vector<double> decode_f64_array(std::span<const std::byte> bytes);

}  // namespace nanopair
