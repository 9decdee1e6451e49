#include "gdl/succinct/distinct.hpp"

#include <unordered_map>
#include <utility>

#include "gdl/error.hpp"

namespace gdl::succinct {

std::vector<std::int64_t> previous_occurrence(const std::vector<std::uint64_t>& l) {
  std::vector<std::int64_t> e(l.size(), 0);
  std::unordered_map<std::uint64_t, std::int64_t> last;
  for (std::size_t k = 0; k < l.size(); ++k) {
    auto it = last.find(l[k]);
    if (it != last.end()) e[k] = it->second;
    last[l[k]] = static_cast<std::int64_t>(k + 1);
  }
  return e;
}

namespace {

void check_range(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j > n) throw RangeError("distinct range out of bounds");
}

}  // namespace

DistinctResult distinct_muthu(const std::vector<std::uint64_t>& l, const std::vector<std::int64_t>& e,
                              const BaseRMQ& q, std::size_t i, std::size_t j) {
  DistinctResult out;
  if (i > j) return out;
  check_range(l.size(), i, j);
  if (e.size() != l.size() || q.size() != l.size()) throw ConsistencyError("L, E and RMQ sizes differ");
  std::vector<std::pair<std::size_t, std::size_t>> stack{{i, j}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (a > b) continue;
    std::size_t k = q.rmq(a, b);
    ++out.rmq_calls;
    std::int64_t prev = e[k - 1];
    if (prev >= static_cast<std::int64_t>(i)) continue;
#ifndef NDEBUG
    if (prev < 0 || (prev > 0 && l[static_cast<std::size_t>(prev) - 1] != l[k - 1]))
      throw ConsistencyError("E does not point to a previous equal value");
#endif
    out.values.push_back(l[k - 1]);
    out.positions.push_back(k);
    stack.emplace_back(k + 1, b);
    if (k > a) stack.emplace_back(a, k - 1);
  }
  return out;
}

DistinctResult distinct_sadakane(const std::vector<std::uint64_t>& l, const BaseRMQ& q, std::size_t d,
                                 std::size_t i, std::size_t j, BitVector& v) {
  DistinctResult out;
  if (i > j) return out;
  check_range(l.size(), i, j);
  if (v.size() < d) throw RangeError("scratch bitvector shorter than D");
  std::vector<std::pair<std::size_t, std::size_t>> stack{{i, j}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (a > b) continue;
    std::size_t k = q.rmq(a, b);
    ++out.rmq_calls;
    std::uint64_t x = l[k - 1];
    if (x < 1 || x > d) {
      for (auto y : out.values) v.set(y, false);
      throw DomainError("value outside [1, D]");
    }
    if (v.get(x)) continue;
    v.set(x, true);
    out.values.push_back(x);
    out.positions.push_back(k);
    stack.emplace_back(k + 1, b);
    if (k > a) stack.emplace_back(a, k - 1);
  }
  for (auto y : out.values) v.set(y, false);
  return out;
}

}  // namespace gdl::succinct
