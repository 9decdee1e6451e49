#include "gdl/doclist/leftist.hpp"

#include "gdl/error.hpp"

namespace gdl::doclist {

namespace {

void check_args(std::size_t n, std::size_t d, std::size_t sp, std::size_t ep, const succinct::BitVector& v) {
  if (sp < 1 || ep > n || sp > ep) throw RangeError("listing range invalid");
  if (v.size() < d) throw RangeError("scratch bitvector shorter than D");
}

std::uint64_t checked(const std::vector<std::uint64_t>& l, std::size_t k, std::size_t d) {
  auto x = l[k - 1];
  if (x < 1 || x > d) throw DomainError("value outside [1, D]");
  return x;
}

}  // namespace

LeftistResult leftist_distinct(const std::vector<std::uint64_t>& l, const succinct::BaseRMQ& e_rmq, std::size_t d,
                               std::size_t sp, std::size_t ep, succinct::BitVector& v) {
  check_args(l.size(), d, sp, ep, v);
  LeftistResult out;
  auto report = [&](std::uint64_t x, std::size_t k) {
    v.set(x, true);
    out.values.push_back(x);
    out.positions.push_back(k);
  };
  std::vector<std::pair<std::size_t, std::size_t>> stack{{sp, ep}};
  try {
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      if (i > j) continue;
      std::size_t x = i;
      while (x <= j && !v.get(checked(l, x, d))) {
        report(l[x - 1], x);
        ++x;
      }
      if (x > j) continue;
      std::size_t k = e_rmq.rmq(x, j);
      ++out.rmq_calls;
      if (v.get(checked(l, k, d))) continue;
      report(l[k - 1], k);
      stack.emplace_back(k + 1, j);
      stack.emplace_back(x, k - 1);
    }
  } catch (...) {
    for (auto y : out.values) v.set(y, false);
    throw;
  }
  for (auto y : out.values) v.set(y, false);
  return out;
}

namespace {

struct ArraySource {
  const std::vector<std::uint64_t>& l;
  const succinct::RunLengthRMQ& q;
  std::size_t d;
  succinct::BitVector& global;
  succinct::BitVector local;
  std::vector<std::uint64_t> touched;
  ActualResult out;

  std::optional<std::size_t> scan(std::size_t x, std::size_t hi) {
    for (; x <= hi; ++x) {
      auto y = value(x);
      if (seen(y)) return x;
      see(y, x);
    }
    return std::nullopt;
  }
  succinct::RunCandidates candidates(std::size_t lo, std::size_t hi) {
    ++out.rmq_calls;
    return q.candidates(lo, hi);
  }
  std::uint64_t value(std::size_t k) {
    ++out.reads;
    return checked(l, k, d);
  }
  bool seen(std::uint64_t x) const { return local.get(x); }
  void see(std::uint64_t x, std::size_t k) {
    local.set(x, true);
    touched.push_back(x);
    if (global.get(x)) return;
    global.set(x, true);
    out.values.push_back(x);
    out.positions.push_back(k);
  }
};

}  // namespace

ActualResult actual_distinct(const std::vector<std::uint64_t>& l, const succinct::RunLengthRMQ& e_rmq, std::size_t d,
                             std::size_t sp, std::size_t ep, succinct::BitVector& v) {
  check_args(l.size(), d, sp, ep, v);
  if (e_rmq.size() != l.size()) throw RangeError("run-length rmq does not match the array");
  ArraySource s{l, e_rmq, d, v, succinct::BitVector(d), {}, {}};
  try {
    detail::actual_variant(s, sp, ep);
  } catch (...) {
    for (auto y : s.out.values) v.set(y, false);
    throw;
  }
  return std::move(s.out);
}

}  // namespace gdl::doclist
