#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gdl/io/binary.hpp"
#include "gdl/succinct/rmq.hpp"
#include "gdl/succinct/sparse_bit_vector.hpp"

namespace gdl::succinct {

struct RunCandidates {
  std::size_t left = 0;
  std::optional<std::size_t> head;
};

// RMQ over an array made of maximal nondecreasing runs, storing only the run
// heads. F marks the heads; the inner RMQ is built over the head values,
// which are dropped after construction.
class RunLengthRMQ {
 public:
  RunLengthRMQ() = default;
  explicit RunLengthRMQ(const std::vector<std::int64_t>& e);

  std::size_t size() const { return f_.size(); }
  std::size_t runs() const { return f_.count_ones(); }
  const SparseBitVector& heads() const { return f_; }

  // The argmin of E[i, j] is one of the two returned positions. Never reads E.
  RunCandidates candidates(std::size_t i, std::size_t j) const;

  std::uint64_t size_in_bits() const { return f_.size_in_bits() + inner_.size_in_bits(); }

  void serialize(io::Writer& out) const;
  static RunLengthRMQ deserialize(io::Reader& in);

 private:
  SparseBitVector f_;
  BaseRMQ inner_;
};

}  // namespace gdl::succinct
