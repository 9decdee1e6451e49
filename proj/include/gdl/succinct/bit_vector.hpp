#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/io/binary.hpp"

namespace gdl::succinct {

// Plain bitvector with rank/select.
//
// Positions are 1-based throughout the succinct module: bits are numbered
// 1..size(), rank(v, k) counts v-bits in [1, k] (so rank(v, 0) == 0), and
// select(v, j) returns the 1-based position of the j-th v-bit.
//
// The directory stores the number of ones before each 512-bit superblock;
// rank is one lookup plus at most eight popcounts, select is a binary search
// over superblocks followed by a word scan.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);
  explicit BitVector(const std::vector<bool>& bits);
  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool operator[](std::size_t pos) const { return get(pos); }
  bool get(std::size_t pos) const;

  // Mutation invalidates the rank/select directory until rebuild() runs.
  // Scratch vectors that only use get/set never need the rebuild.
  void set(std::size_t pos, bool value = true);
  void rebuild();

  std::size_t rank(bool v, std::size_t k) const { return v ? rank1(k) : rank0(k); }
  std::size_t rank1(std::size_t k) const;
  std::size_t rank0(std::size_t k) const { return k - rank1(k); }

  std::size_t select(bool v, std::size_t j) const { return v ? select1(j) : select0(j); }
  std::size_t select1(std::size_t j) const;
  std::size_t select0(std::size_t j) const;

  // Works on stale directories too.
  std::size_t count_ones() const;

  // Payload plus directory, in bits.
  std::uint64_t size_in_bits() const;

  std::string to_string() const;

  void serialize(io::Writer& out) const;
  static BitVector deserialize(io::Reader& in);

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  static constexpr std::size_t kWordsPerSuper = 8;
  void check_directory() const;

  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> super_;  // ones before superblock s; one extra entry at the end
  std::size_t size_ = 0;
  bool directory_ok_ = true;
};

}  // namespace gdl::succinct
