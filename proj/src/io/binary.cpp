#include "gdl/io/binary.hpp"

#include "gdl/error.hpp"

namespace gdl::io {

void Writer::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void Writer::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void Writer::varint(std::uint64_t v) {
  while (v >= 0x80) {
    u8(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  u8(static_cast<std::uint8_t>(v));
}

void Writer::bytes(std::string_view s) { buf_.append(s); }

void Writer::str(std::string_view s) {
  u64(s.size());
  bytes(s);
}

void Writer::patch_u64(std::size_t at, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_[at + i] = static_cast<char>(static_cast<std::uint8_t>(v >> (8 * i)));
}

void Reader::need(std::size_t n) const {
  if (n > data_.size() - pos_) throw FormatError("truncated data");
}

std::uint8_t Reader::u8() {
  need(1);
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
  return v;
}

std::uint64_t Reader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
  return v;
}

std::uint64_t Reader::varint() {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    std::uint8_t b = u8();
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) return v;
  }
  throw FormatError("varint too long");
}

std::string_view Reader::bytes(std::size_t n) {
  need(n);
  auto s = data_.substr(pos_, n);
  pos_ += n;
  return s;
}

std::string Reader::str() {
  auto n = u64();
  return std::string(bytes(n));
}

std::vector<std::uint32_t> Reader::u32_vector() {
  auto n = u64();
  if (n > remaining() / 4) throw FormatError("vector length exceeds data");
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = u32();
  return v;
}

std::vector<std::uint64_t> Reader::u64_vector() {
  auto n = u64();
  if (n > remaining() / 8) throw FormatError("vector length exceeds data");
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = u64();
  return v;
}

Reader Reader::blob(std::uint32_t tag, std::uint32_t version) {
  auto t = u32();
  if (t != tag) throw FormatError("unexpected blob tag");
  auto ver = u32();
  if (ver != version) throw FormatError("unsupported blob version");
  auto len = u64();
  return Reader(bytes(len));
}

void Reader::expect_end() const {
  if (!at_end()) throw FormatError("trailing bytes in blob");
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : data) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gdl::io
