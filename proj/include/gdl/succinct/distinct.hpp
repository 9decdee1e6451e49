#pragma once

#include <cstdint>
#include <vector>

#include "gdl/succinct/bit_vector.hpp"
#include "gdl/succinct/rmq.hpp"

namespace gdl::succinct {

struct DistinctResult {
  std::vector<std::uint64_t> values;   // in discovery order
  std::vector<std::size_t> positions;  // where each value was found
  std::size_t rmq_calls = 0;
};

// E[k] = largest l < k with L[l] = L[k], else 0 (1-based positions stored in
// a 0-based vector, so E[k-1] describes position k).
std::vector<std::int64_t> previous_occurrence(const std::vector<std::uint64_t>& l);

// Distinct values of L[i, j] through RMQs on E: a position is the leftmost
// occurrence of its value in the range iff E[k] < i.
DistinctResult distinct_muthu(const std::vector<std::uint64_t>& l, const std::vector<std::int64_t>& e,
                              const BaseRMQ& q, std::size_t i, std::size_t j);

// Same output without E: marks reported values in v (length D) and stops a
// branch at an already-marked value. Recurses left before right, which is
// what makes the marked test equivalent to E[k] < i. v is all-zeros again
// on return.
DistinctResult distinct_sadakane(const std::vector<std::uint64_t>& l, const BaseRMQ& q, std::size_t d,
                                 std::size_t i, std::size_t j, BitVector& v);

}  // namespace gdl::succinct
