#pragma once

#include <cstdint>
#include <vector>

#include "gdl/io/binary.hpp"
#include "gdl/succinct/bit_vector.hpp"
#include "gdl/succinct/packed_ints.hpp"

namespace gdl::succinct {

// Elias-Fano encoded bitvector over universe [1, t] with rho one-bits.
//
// Each one at position p stores x = p - 1 split into ell = floor(log2(t/rho))
// low bits (packed) and a high part written in unary into a plain bitvector.
// select1 is one select on the high part; rank1 bounds the high bucket with
// two select0 calls and binary-searches the low bits inside it; select0 is a
// binary search over rank0.
//
// Measured space satisfies size_in_bits() <= 2*rho*(ceil(log2(t/rho)) + 2) + 512
// for rho >= 1 (kSizeSlack covers word rounding and directory headers).
class SparseBitVector {
 public:
  static constexpr std::uint64_t kSizeFactor = 2;
  static constexpr std::uint64_t kSizeSlack = 512;

  SparseBitVector() = default;
  // positions: strictly increasing, each in [1, universe].
  SparseBitVector(std::size_t universe, const std::vector<std::uint64_t>& positions);
  static SparseBitVector from_bits(const BitVector& bv);

  std::size_t size() const { return t_; }
  std::size_t count_ones() const { return rho_; }

  bool get(std::size_t pos) const;
  bool operator[](std::size_t pos) const { return get(pos); }

  std::size_t rank(bool v, std::size_t k) const { return v ? rank1(k) : rank0(k); }
  std::size_t rank1(std::size_t k) const;
  std::size_t rank0(std::size_t k) const { return k - rank1(k); }

  std::size_t select(bool v, std::size_t j) const { return v ? select1(j) : select0(j); }
  std::size_t select1(std::size_t j) const;
  std::size_t select0(std::size_t j) const;

  std::vector<std::uint64_t> positions() const;

  std::uint64_t size_in_bits() const { return high_.size_in_bits() + low_.size_in_bits(); }
  // The documented bound for this (t, rho).
  static std::uint64_t size_bound(std::size_t t, std::size_t rho);

  void serialize(io::Writer& out) const;
  static SparseBitVector deserialize(io::Reader& in);

 private:
  std::size_t t_ = 0;
  std::size_t rho_ = 0;
  unsigned ell_ = 0;
  PackedInts low_;
  BitVector high_;
};

}  // namespace gdl::succinct
