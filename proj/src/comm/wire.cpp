#include "nanopair/comm/wire.hpp"

#include <bit>
#include <string>

namespace nanopair {

namespace {

void put_u32(Bytes& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::byte>((v >> (8 * b)) & 0xffu));
}

void put_f64(Bytes& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::byte>((v >> (8 * b)) & 0xffu));
}

std::uint32_t get_u32(std::span<const std::byte> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= std::to_integer<std::uint32_t>(in[at + b]) << (8 * b);
  return v;
}

double get_f64(std::span<const std::byte> in, std::size_t at) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::to_integer<std::uint64_t>(in[at + b]) << (8 * b);
  return std::bit_cast<double>(v);
}

}  // namespace

int default_stride(RecordKind kind) {
  return (kind == RecordKind::Exchange || kind == RecordKind::Migration) ? 6 : 3;
}

Bytes encode_record(RecordKind kind, int stride, std::span<const double> values) {
  if ((stride != 3 && stride != 6) || values.size() % stride != 0)
    throw ProtocolError("record payload is not a whole number of 3- or 6-double rows");
  Bytes out;
  out.reserve(5 + 8 * values.size());
  out.push_back(static_cast<std::byte>(kind));
  put_u32(out, static_cast<std::uint32_t>(values.size() / stride));
  for (double v : values) put_f64(out, v);
  return out;
}

WireRecord decode_record(std::span<const std::byte> bytes) {
  if (bytes.size() < 5) throw ProtocolError("record shorter than its 5-byte header");
  const auto kind_byte = std::to_integer<std::uint8_t>(bytes[0]);
  if (kind_byte > 3) throw ProtocolError("unknown record kind " + std::to_string(kind_byte));
  WireRecord rec;
  rec.kind = static_cast<RecordKind>(kind_byte);
  const std::uint32_t count = get_u32(bytes, 1);
  const std::size_t body = bytes.size() - 5;
  if (count == 0) {
    if (body != 0) throw ProtocolError("empty record carries a payload");
    rec.stride = default_stride(rec.kind);
    return rec;
  }
  if (body % (8u * count) != 0) throw ProtocolError("record payload size mismatch");
  rec.stride = static_cast<int>(body / (8u * count));
  if (rec.stride != 3 && rec.stride != 6)
    throw ProtocolError("record stride " + std::to_string(rec.stride) + " is neither 3 nor 6");
  rec.values.resize(static_cast<std::size_t>(count) * rec.stride);
  for (std::size_t k = 0; k < rec.values.size(); ++k) rec.values[k] = get_f64(bytes, 5 + 8 * k);
  return rec;
}

Bytes encode_f64_array(std::span<const double> values) {
  Bytes out;
  out.reserve(4 + 8 * values.size());
  put_u32(out, static_cast<std::uint32_t>(values.size()));
  for (double v : values) put_f64(out, v);
  return out;
}

std::vector<double> decode_f64_array(std::span<const std::byte> bytes) {
  if (bytes.size() < 4) throw ProtocolError("array shorter than its header");
  const std::uint32_t n = get_u32(bytes, 0);
  if (bytes.size() != 4 + 8ull * n) throw ProtocolError("array payload size mismatch");
  std::vector<double> out(n);
  for (std::uint32_t k = 0; k < n; ++k) out[k] = get_f64(bytes, 4 + 8ull * k);
  return out;
}

}  // namespace nanopair
