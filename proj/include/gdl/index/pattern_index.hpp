#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/collection/collection.hpp"
#include "gdl/grammar/grammar.hpp"
#include "gdl/grid/grid.hpp"
#include "gdl/io/binary.hpp"

namespace gdl::index {

using collection::Occurrence;
using grammar::RuleId;

// An occurrence of P that is not inside any single child of `rule`: either
// across the boundary of a binary rule (split = |P1|) or inside the symbols
// of a terminal rule (split = 0, offset = start inside the metasymbol).
struct Primary {
  RuleId rule = 0;
  std::size_t split = 0;
  std::uint64_t offset = 0;  // 1-based start of P inside s(rule)

  friend auto operator<=>(const Primary&, const Primary&) = default;
};

// Grid rectangle of one cut P = P1 P2 with both ranges nonempty.
struct CutRectangle {
  std::size_t split = 0;
  std::uint64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
};

// Grammar index: left symbols sorted by reversed expansion form the columns,
// right symbols sorted by expansion form the rows, and each binary rule
// A -> B C is the point (col(B), row(C)) labeled A with weight count(A).
// Symbols with equal expansions share a column (row).
class PatternIndex {
 public:
  explicit PatternIndex(std::shared_ptr<const grammar::Grammar> g, grid::GridOptions opt = {});

  const grammar::Grammar& grammar() const { return *g_; }
  std::shared_ptr<const grammar::Grammar> grammar_ptr() const { return g_; }
  const grid::Grid& grid() const { return grid_; }
  const std::vector<std::uint64_t>& counts() const { return count_; }
  std::size_t num_cols() const { return col_rep_.size(); }
  std::size_t num_rows() const { return row_rep_.size(); }
  RuleId column_rule(std::uint64_t x) const { return col_rep_.at(x - 1); }
  RuleId row_rule(std::uint64_t y) const { return row_rep_.at(y - 1); }

  // Ranks (1-based, inclusive) of the columns whose reversed expansion starts
  // with p1rev, and of the rows whose expansion starts with p2. An empty
  // range comes back with first = second + 1.
  std::pair<std::uint64_t, std::uint64_t> search_left(std::string_view p1rev) const;
  std::pair<std::uint64_t, std::uint64_t> search_right(std::string_view p2) const;

  std::vector<CutRectangle> cut_rectangles(std::string_view p) const;
  // Binary-rule primaries, one per (rule, split).
  std::vector<Primary> primary_occurrences(std::string_view p) const;
  // Occurrences inside single terminal rules (only when |P| <= ms_len).
  std::vector<Primary> leaf_primaries(std::string_view p) const;

  std::uint64_t count(std::string_view p) const;
  // Sorted by (document, offset).
  std::vector<Occurrence> locate(std::string_view p) const;

  std::uint64_t uses_bits() const;

  // Stores the grid and the column and row representatives; everything else
  // is rebuilt from the grammar.
  void serialize(io::Writer& out) const;
  static std::shared_ptr<const PatternIndex> deserialize(io::Reader& in, std::shared_ptr<const grammar::Grammar> g);

 private:
  PatternIndex() = default;
  void build_derived();
  int compare_left(RuleId b, std::string_view p1rev) const;
  int compare_right(RuleId c, std::string_view p2) const;

  struct Use {
    RuleId parent;
    std::uint64_t offset;
  };

  std::shared_ptr<const grammar::Grammar> g_;
  grid::Grid grid_;
  std::vector<RuleId> col_rep_, row_rep_;
  std::vector<std::uint64_t> count_;
  std::vector<std::vector<Use>> uses_;
  std::vector<std::vector<std::uint32_t>> start_docs_;
  std::vector<RuleId> terminals_;
  std::vector<std::uint64_t> doc_start_;
};

}  // namespace gdl::index
