#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gdl/io/binary.hpp"
#include "gdl/succinct/packed_ints.hpp"

namespace gdl::succinct {

// Range-minimum structure with leftmost tie-breaking.
//
// The input values are not needed at query time. Build computes the depth of
// every position in the Cartesian tree whose root is the leftmost minimum;
// the leftmost argmin of [i, j] is then the unique shallowest position in
// [i, j]. Depths are kept in a packed array and queried through a sparse
// table over blocks of ceil(log2(u+1)) positions, with in-block scans.
// Set keep_values to retain a copy of the input for tests and debugging.
class BaseRMQ {
 public:
  BaseRMQ() = default;
  explicit BaseRMQ(const std::vector<std::int64_t>& values, bool keep_values = false);

  std::size_t size() const { return u_; }

  // Leftmost argmin over [i, j], 1-based.
  std::size_t rmq(std::size_t i, std::size_t j) const;

  bool has_values() const { return values_.has_value(); }
  std::int64_t value(std::size_t i) const;

  std::uint64_t size_in_bits() const;

  void serialize(io::Writer& out) const;
  static BaseRMQ deserialize(io::Reader& in);

 private:
  std::size_t scan(std::size_t lo, std::size_t hi) const;  // 0-based inclusive
  std::size_t shallower(std::size_t a, std::size_t b) const {
    return depth_.get(b) < depth_.get(a) ? b : a;
  }
  void build_tables();

  std::size_t u_ = 0;
  std::size_t block_ = 1;
  PackedInts depth_;
  std::vector<PackedInts> table_;  // table_[k][b]: shallowest position in blocks [b, b + 2^k)
  std::optional<std::vector<std::int64_t>> values_;
};

}  // namespace gdl::succinct
