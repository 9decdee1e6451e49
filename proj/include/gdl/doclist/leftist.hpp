#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gdl/succinct/bit_vector.hpp"
#include "gdl/succinct/rmq.hpp"
#include "gdl/succinct/run_length_rmq.hpp"

namespace gdl::doclist {

struct LeftistResult {
  std::vector<std::uint64_t> values;   // in discovery order
  std::vector<std::size_t> positions;  // leftmost occurrence of each value
  std::size_t rmq_calls = 0;
};

// Reference listing over an explicit array with a true RMQ on E (L and E as
// in succinct/distinct.hpp). Scans from i until a reported value at d, takes
// the minimum of E[d, j], stops if L[k] is reported and otherwise reports it
// and recurses on [d, k-1] then [k+1, j]. v (length >= D) is all-zeros on
// entry and on return.
LeftistResult leftist_distinct(const std::vector<std::uint64_t>& l, const succinct::BaseRMQ& e_rmq, std::size_t d,
                               std::size_t sp, std::size_t ep, succinct::BitVector& v);

namespace detail {

// Control flow shared by every variant that only sees run heads of E.
//
// The source provides
//   scan(x, hi)       reads L[x], L[x+1], ... through see() until a value
//                     already seen in this range; returns its position
//   candidates(lo,hi) the run-length RMQ candidates on [lo, hi]
//   value(k)          L[k]
//   seen(x), see(x,k) range-local marks
template <class Source>
void actual_variant(Source& s, std::size_t sp, std::size_t ep) {
  enum class Step { Scan, Heads };
  struct Task {
    Step step;
    std::size_t lo, hi;
  };
  std::vector<Task> stack{{Step::Scan, sp, ep}};
  while (!stack.empty()) {
    auto [step, lo, hi] = stack.back();
    stack.pop_back();
    if (lo > hi) continue;
    if (step == Step::Scan) {
      if (std::optional<std::size_t> x = s.scan(lo, hi)) stack.push_back({Step::Heads, *x, hi});
      continue;
    }
    // L[lo] already occurred earlier in the range, so E[lo] is never the
    // useful minimum; only the run head matters.
    if (lo == hi) continue;
    auto c = s.candidates(lo, hi);
    if (!c.head || *c.head == lo) continue;
    std::size_t k = *c.head;
    auto x = s.value(k);
    if (s.seen(x)) continue;
    s.see(x, k);
    stack.push_back({Step::Scan, k + 1, hi});
    stack.push_back({Step::Heads, lo, k - 1});
  }
}

}  // namespace detail

struct ActualResult {
  std::vector<std::uint64_t> values;   // values not already in v, in discovery order
  std::vector<std::size_t> positions;
  std::size_t rmq_calls = 0;
  std::size_t reads = 0;  // L cells read
};

// The run-head variant over an explicit array. Values already marked in v
// are not reported; reported ones are marked in v on return.
ActualResult actual_distinct(const std::vector<std::uint64_t>& l, const succinct::RunLengthRMQ& e_rmq, std::size_t d,
                             std::size_t sp, std::size_t ep, succinct::BitVector& v);

}  // namespace gdl::doclist
