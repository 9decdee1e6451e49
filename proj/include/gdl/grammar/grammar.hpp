#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/io/binary.hpp"

namespace gdl::grammar {

using RuleId = std::uint32_t;

// A rule is either binary (A -> left right) or terminal (A -> symbols). With
// metasymbol length 1 every terminal rule has exactly one symbol; longer
// metasymbols hold up to ms_len symbols and may be empty after deletions.
struct Rule {
  bool terminal = false;
  RuleId left = 0;
  RuleId right = 0;
  std::string symbols;

  static Rule binary(RuleId l, RuleId r) { return Rule{false, l, r, {}}; }
  static Rule leaf(std::string s) { return Rule{true, 0, 0, std::move(s)}; }
};

// Grammar over byte symbols with one start rule per document. Rule ids are
// 0-based; documents are numbered 1..D.
class Grammar {
 public:
  Grammar() = default;
  // Computes the topological order, expansion lengths and heights. Throws
  // GrammarError on dangling references or cycles.
  Grammar(std::vector<Rule> rules, std::vector<RuleId> starts, unsigned ms_len = 1);

  std::size_t num_rules() const { return rules_.size(); }
  std::size_t num_docs() const { return starts_.size(); }
  unsigned ms_len() const { return ms_len_; }
  std::uint64_t total_length() const { return total_; }

  const Rule& rule(RuleId a) const { return rules_.at(a); }
  const std::vector<Rule>& rules() const { return rules_; }
  bool is_terminal(RuleId a) const { return rules_.at(a).terminal; }
  std::uint64_t exp_len(RuleId a) const { return len_.at(a); }
  std::uint32_t height(RuleId a) const { return height_.at(a); }

  RuleId start(std::size_t doc) const;
  const std::vector<RuleId>& starts() const { return starts_; }
  std::uint64_t doc_length(std::size_t doc) const { return exp_len(start(doc)); }

  // Children before parents.
  const std::vector<RuleId>& topological_order() const { return topo_; }

  // s(A)[i..j], 1-based inclusive.
  std::string extract(RuleId a, std::uint64_t i, std::uint64_t j) const;
  std::string extract_prefix(RuleId a, std::uint64_t len) const;
  std::string extract_suffix(RuleId a, std::uint64_t len) const;
  std::string expand(RuleId a) const;
  std::string document(std::size_t doc) const { return expand(start(doc)); }
  char symbol_at(RuleId a, std::uint64_t i) const;

  // Checks CNF shape, length sums, metasymbol lengths and that no two rules
  // share a right-hand side. Throws GrammarError.
  void validate() const;

  std::uint64_t size_in_bits() const;

  void serialize(io::Writer& out) const;
  static Grammar deserialize(io::Reader& in);

 private:
  void append(RuleId a, std::uint64_t i, std::uint64_t j, std::string& out) const;

  std::vector<Rule> rules_;
  std::vector<RuleId> starts_;
  unsigned ms_len_ = 1;
  std::vector<std::uint64_t> len_;
  std::vector<std::uint32_t> height_;
  std::vector<RuleId> topo_;
  std::uint64_t total_ = 0;
};

// Lazy left-to-right walk over s(A).
class ForwardCursor {
 public:
  ForwardCursor(const Grammar& g, RuleId a);
  bool done() const { return leaf_ == nullptr; }
  char get() const { return (*leaf_)[pos_]; }
  void next();

 private:
  void descend(RuleId a);
  void advance_leaf();
  const Grammar* g_;
  std::vector<RuleId> stack_;
  const std::string* leaf_ = nullptr;
  std::size_t pos_ = 0;
};

// Lazy right-to-left walk over s(A).
class BackwardCursor {
 public:
  BackwardCursor(const Grammar& g, RuleId a);
  bool done() const { return leaf_ == nullptr; }
  char get() const { return (*leaf_)[pos_ - 1]; }
  void next();

 private:
  void descend(RuleId a);
  void advance_leaf();
  const Grammar* g_;
  std::vector<RuleId> stack_;
  const std::string* leaf_ = nullptr;
  std::size_t pos_ = 0;
};

// count(A): parse-tree nodes labeled A over all documents. Throws
// GrammarError when no topological order exists.
std::vector<std::uint64_t> occ_counts(const std::vector<Rule>& rules, const std::vector<RuleId>& starts);
std::vector<std::uint64_t> occ_counts(const Grammar& g);

}  // namespace gdl::grammar
