#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gdl::io {

// Little-endian byte sink. Every structure serializes itself into a tagged
// blob: u32 tag, u32 version, u64 payload length, payload (see FORMAT.md).
class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void varint(std::uint64_t v);
  void bytes(std::string_view s);
  // u64 length followed by raw bytes.
  void str(std::string_view s);

  template <class T>
  void u32_vector(std::span<const T> v) {
    u64(v.size());
    for (auto x : v) u32(static_cast<std::uint32_t>(x));
  }
  template <class T>
  void u64_vector(std::span<const T> v) {
    u64(v.size());
    for (auto x : v) u64(static_cast<std::uint64_t>(x));
  }

  // Writes the blob header for `tag`, lets `body` fill the payload, then
  // patches the length field.
  template <class Body>
  void blob(std::uint32_t tag, std::uint32_t version, Body&& body) {
    u32(tag);
    u32(version);
    std::size_t len_at = buf_.size();
    u64(0);
    std::size_t start = buf_.size();
    body(*this);
    patch_u64(len_at, buf_.size() - start);
  }

  const std::string& data() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  void patch_u64(std::size_t at, std::uint64_t v);
  std::string buf_;
};

// Bounds-checked reader; all failures raise FormatError.
class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::uint64_t varint();
  std::string_view bytes(std::size_t n);
  std::string str();
  std::vector<std::uint32_t> u32_vector();
  std::vector<std::uint64_t> u64_vector();

  // Reads a blob header, checks tag and version, and returns a reader over
  // exactly the payload. The outer reader is advanced past it.
  Reader blob(std::uint32_t tag, std::uint32_t version);

  bool at_end() const { return pos_ == data_.size(); }
  void expect_end() const;
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const;
  std::string_view data_;
  std::size_t pos_ = 0;
};

constexpr std::uint32_t make_tag(const char (&s)[5]) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(s[0])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[3])) << 24);
}

// 64-bit FNV-1a, used for container section checksums.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace gdl::io
