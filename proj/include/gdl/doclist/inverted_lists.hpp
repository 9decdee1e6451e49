#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gdl/grammar/grammar.hpp"
#include "gdl/io/binary.hpp"

namespace gdl::doclist {

using grammar::RuleId;
using DocRange = std::pair<std::uint32_t, std::uint32_t>;

// The list of documents whose parse tree contains each rule, stored as a
// minimal sequence of closed document ranges.
class InvertedLists {
 public:
  InvertedLists() = default;
  explicit InvertedLists(const grammar::Grammar& g);
  // Lists given directly as sorted, merged ranges (one entry per rule).
  InvertedLists(std::vector<std::vector<DocRange>> lists, std::uint32_t docs);

  std::size_t num_lists() const { return offset_.empty() ? 0 : offset_.size() - 1; }
  std::uint32_t num_docs() const { return docs_; }
  std::size_t length(RuleId a) const;
  std::size_t num_ranges(RuleId a) const { return offset_[a + 1] - offset_[a]; }
  DocRange range(RuleId a, std::size_t r) const;  // r is 0-based
  // k-th document of the list, 1-based k.
  std::uint32_t doc_at(RuleId a, std::size_t k) const;
  std::vector<std::uint32_t> decode(RuleId a) const;
  std::vector<DocRange> ranges(RuleId a) const;
  bool contains(RuleId a, std::uint32_t d) const;

  std::size_t total_ranges() const { return lo_.size(); }
  std::uint64_t total_length() const;
  std::uint64_t size_in_bits() const;

  // Walks a list from a 1-based position onwards.
  class Cursor {
   public:
    Cursor(const InvertedLists& lists, RuleId a, std::size_t k);
    bool done() const { return r_ == end_; }
    std::uint32_t get() const { return doc_; }
    void next();

   private:
    const InvertedLists* lists_;
    std::size_t r_, end_;
    std::uint32_t doc_ = 0;
  };

  void serialize(io::Writer& out) const;
  static InvertedLists deserialize(io::Reader& in);

  friend bool operator==(const InvertedLists&, const InvertedLists&) = default;

 private:
  void finish();

  std::uint32_t docs_ = 0;
  std::vector<std::size_t> offset_;  // ranges of rule a live at [offset_[a], offset_[a+1])
  std::vector<std::uint32_t> lo_, hi_;
  std::vector<std::uint64_t> before_;  // documents in earlier ranges of the same list
};

// Per-document sets of rules in each parse tree, sorted by rule id.
std::vector<std::vector<RuleId>> document_rule_sets(const grammar::Grammar& g);

}  // namespace gdl::doclist
