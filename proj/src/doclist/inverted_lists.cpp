#include "gdl/doclist/inverted_lists.hpp"

#include <algorithm>
#include <bit>

#include "gdl/error.hpp"

namespace gdl::doclist {

namespace {
constexpr std::uint32_t kTag = io::make_tag("INVL");

std::uint64_t width(std::uint64_t v) { return std::max<std::uint64_t>(1, std::bit_width(v)); }
}  // namespace

std::vector<std::vector<RuleId>> document_rule_sets(const grammar::Grammar& g) {
  std::vector<std::vector<RuleId>> sets(g.num_docs());
  std::vector<std::uint32_t> seen(g.num_rules(), 0);
  std::vector<RuleId> stack;
  for (std::uint32_t d = 1; d <= g.num_docs(); ++d) {
    auto& out = sets[d - 1];
    stack.assign(1, g.start(d));
    seen[g.start(d)] = d;
    while (!stack.empty()) {
      RuleId a = stack.back();
      stack.pop_back();
      out.push_back(a);
      if (g.is_terminal(a)) continue;
      for (RuleId c : {g.rule(a).left, g.rule(a).right}) {
        if (seen[c] != d) {
          seen[c] = d;
          stack.push_back(c);
        }
      }
    }
    std::sort(out.begin(), out.end());
  }
  return sets;
}

InvertedLists::InvertedLists(const grammar::Grammar& g) : docs_(g.num_docs()) {
  // A rule that stays from document d-1 to d extends its open range; one that
  // appears opens a new range.
  std::vector<std::vector<DocRange>> lists(g.num_rules());
  auto sets = document_rule_sets(g);
  for (std::uint32_t d = 1; d <= docs_; ++d) {
    for (RuleId a : sets[d - 1]) {
      auto& l = lists[a];
      if (!l.empty() && l.back().second + 1 == d)
        l.back().second = d;
      else
        l.emplace_back(d, d);
    }
  }
  *this = InvertedLists(std::move(lists), docs_);
}

InvertedLists::InvertedLists(std::vector<std::vector<DocRange>> lists, std::uint32_t docs) : docs_(docs) {
  offset_.assign(1, 0);
  for (const auto& l : lists) {
    std::uint32_t prev = 0;
    for (auto [lo, hi] : l) {
      if (lo > hi || hi > docs || lo == 0 || (prev != 0 && lo <= prev + 1))
        throw BuildError("inverted list ranges must be sorted, disjoint and non-adjacent");
      lo_.push_back(lo);
      hi_.push_back(hi);
      prev = hi;
    }
    offset_.push_back(lo_.size());
  }
  finish();
}

void InvertedLists::finish() {
  before_.assign(lo_.size(), 0);
  for (std::size_t a = 0; a + 1 < offset_.size(); ++a) {
    std::uint64_t acc = 0;
    for (std::size_t r = offset_[a]; r < offset_[a + 1]; ++r) {
      before_[r] = acc;
      acc += hi_[r] - lo_[r] + 1;
    }
  }
}

std::size_t InvertedLists::length(RuleId a) const {
  if (offset_[a] == offset_[a + 1]) return 0;
  std::size_t last = offset_[a + 1] - 1;
  return before_[last] + (hi_[last] - lo_[last] + 1);
}

DocRange InvertedLists::range(RuleId a, std::size_t r) const {
  if (r >= num_ranges(a)) throw RangeError("list range index out of range");
  return {lo_[offset_[a] + r], hi_[offset_[a] + r]};
}

std::uint32_t InvertedLists::doc_at(RuleId a, std::size_t k) const {
  if (k < 1 || k > length(a)) throw RangeError("list position out of range");
  auto first = before_.begin() + static_cast<std::ptrdiff_t>(offset_[a]);
  auto last = before_.begin() + static_cast<std::ptrdiff_t>(offset_[a + 1]);
  auto it = std::upper_bound(first, last, k - 1) - 1;
  auto r = static_cast<std::size_t>(it - before_.begin());
  return lo_[r] + static_cast<std::uint32_t>(k - 1 - before_[r]);
}

std::vector<std::uint32_t> InvertedLists::decode(RuleId a) const {
  std::vector<std::uint32_t> out;
  for (std::size_t r = offset_[a]; r < offset_[a + 1]; ++r)
    for (std::uint32_t d = lo_[r]; d <= hi_[r]; ++d) out.push_back(d);
  return out;
}

std::vector<DocRange> InvertedLists::ranges(RuleId a) const {
  std::vector<DocRange> out;
  for (std::size_t r = offset_[a]; r < offset_[a + 1]; ++r) out.emplace_back(lo_[r], hi_[r]);
  return out;
}

bool InvertedLists::contains(RuleId a, std::uint32_t d) const {
  auto first = hi_.begin() + static_cast<std::ptrdiff_t>(offset_[a]);
  auto last = hi_.begin() + static_cast<std::ptrdiff_t>(offset_[a + 1]);
  auto it = std::lower_bound(first, last, d);
  return it != last && lo_[static_cast<std::size_t>(it - hi_.begin())] <= d;
}

std::uint64_t InvertedLists::total_length() const {
  std::uint64_t n = 0;
  for (std::size_t r = 0; r < lo_.size(); ++r) n += hi_[r] - lo_[r] + 1;
  return n;
}

std::uint64_t InvertedLists::size_in_bits() const {
  std::uint64_t w = width(docs_);
  return 2 * w * lo_.size() + width(lo_.size()) * offset_.size();
}

InvertedLists::Cursor::Cursor(const InvertedLists& lists, RuleId a, std::size_t k)
    : lists_(&lists), r_(lists.offset_[a + 1]), end_(lists.offset_[a + 1]) {
  if (k < 1 || k > lists.length(a)) throw RangeError("list position out of range");
  auto first = lists.before_.begin() + static_cast<std::ptrdiff_t>(lists.offset_[a]);
  auto last = lists.before_.begin() + static_cast<std::ptrdiff_t>(end_);
  r_ = static_cast<std::size_t>(std::upper_bound(first, last, k - 1) - 1 - lists.before_.begin());
  doc_ = lists.lo_[r_] + static_cast<std::uint32_t>(k - 1 - lists.before_[r_]);
}

void InvertedLists::Cursor::next() {
  if (doc_ < lists_->hi_[r_]) {
    ++doc_;
  } else if (++r_ != end_) {
    doc_ = lists_->lo_[r_];
  }
}

void InvertedLists::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u32(docs_);
    w.u64(num_lists());
    for (std::size_t a = 0; a < num_lists(); ++a) {
      w.varint(offset_[a + 1] - offset_[a]);
      std::uint32_t prev = 0;
      for (std::size_t r = offset_[a]; r < offset_[a + 1]; ++r) {
        w.varint(lo_[r] - prev);
        w.varint(hi_[r] - lo_[r]);
        prev = hi_[r];
      }
    }
  });
}

InvertedLists InvertedLists::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  std::uint32_t docs = r.u32();
  auto n = r.u64();
  if (n > r.remaining()) throw FormatError("inverted list count exceeds data");
  std::vector<std::vector<DocRange>> lists(n);
  for (auto& l : lists) {
    auto k = r.varint();
    if (k > r.remaining()) throw FormatError("range count exceeds data");
    std::uint64_t prev = 0;
    for (std::uint64_t t = 0; t < k; ++t) {
      std::uint64_t lo = prev + r.varint();
      std::uint64_t hi = lo + r.varint();
      if (hi > docs) throw FormatError("inverted list range exceeds document count");
      l.emplace_back(static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi));
      prev = hi;
    }
  }
  r.expect_end();
  try {
    return InvertedLists(std::move(lists), docs);
  } catch (const BuildError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace gdl::doclist
