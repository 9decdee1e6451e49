#pragma once

#include <cstdint>
#include <vector>

#include "gdl/io/binary.hpp"

namespace gdl::succinct {

// Fixed-width integer array. Unlike the bitvectors this is a plain container
// and is indexed from 0.
class PackedInts {
 public:
  PackedInts() = default;
  PackedInts(std::size_t n, unsigned width);
  static PackedInts from_values(const std::vector<std::uint64_t>& values);

  std::size_t size() const { return n_; }
  unsigned width() const { return width_; }

  std::uint64_t get(std::size_t i) const;
  void set(std::size_t i, std::uint64_t v);
  std::uint64_t operator[](std::size_t i) const { return get(i); }

  std::uint64_t size_in_bits() const { return 64 * words_.size(); }

  void serialize(io::Writer& out) const;
  static PackedInts deserialize(io::Reader& in);

  friend bool operator==(const PackedInts&, const PackedInts&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t n_ = 0;
  unsigned width_ = 0;
};

// Bits needed to store v (0 for v = 0).
unsigned bit_width_of(std::uint64_t v);

}  // namespace gdl::succinct
