#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/doclist/inverted_lists.hpp"
#include "gdl/grid/grid.hpp"
#include "gdl/index/pattern_index.hpp"
#include "gdl/io/binary.hpp"
#include "gdl/succinct/bit_vector.hpp"
#include "gdl/succinct/run_length_rmq.hpp"
#include "gdl/succinct/sparse_bit_vector.hpp"

namespace gdl::doclist {

// How a node position reaches its inverted list: by tracking down to the
// leaf labels, or up to the root labels.
enum class ListLayout : std::uint8_t { Leaf = 0, Root = 1 };

const char* layout_name(ListLayout l);
ListLayout parse_layout(std::string_view s);

struct ListingStats {
  std::size_t rmq_calls = 0;
  std::size_t lists_opened = 0;
  std::size_t elements_scanned = 0;
  std::size_t nodes_visited = 0;
  std::size_t track_hops = 0;

  ListingStats& operator+=(const ListingStats& o);
};

struct DocStats {
  std::vector<std::size_t> level_runs;   // sum of E runs over the nodes of each depth
  std::vector<std::size_t> level_nodes;
  std::size_t total_runs = 0;
  std::uint64_t grammar_bits = 0, grid_bits = 0, uses_bits = 0, m_bits = 0, rmq_bits = 0, list_bits = 0,
                short_bits = 0;
  std::size_t list_ranges = 0;
  std::uint64_t total_bits() const {
    return grammar_bits + grid_bits + uses_bits + m_bits + rmq_bits + list_bits + short_bits;
  }
};

// Document listing on top of a pattern index. Node (a, b) of the grid holds
// A_1..A_q; L is the concatenation of their inverted lists, M marks where
// each list starts in L, and E[k] is the previous position of L[k] in L (0 if
// none). Only the run heads of E are kept.
class DocIndex {
 public:
  DocIndex(std::shared_ptr<const index::PatternIndex> pidx, ListLayout layout = ListLayout::Leaf);

  const index::PatternIndex& pattern_index() const { return *pidx_; }
  const InvertedLists& lists() const { return lists_; }
  ListLayout layout() const { return layout_; }
  std::uint32_t num_docs() const { return docs_; }

  // Sorted ids of the documents containing p.
  std::vector<std::uint32_t> list_documents(std::string_view p, ListingStats* stats = nullptr) const;

  // Documents of the node range's lists that are not marked in v, in
  // discovery order; each is marked in v on return.
  std::vector<std::uint32_t> range_distinct(const grid::NodeRange& nr, succinct::BitVector& v,
                                            ListingStats* stats = nullptr) const;

  // Rule of the k-th sequence position of node v, through the list layout.
  RuleId node_rule(grid::NodeId v, std::size_t k, ListingStats* stats = nullptr) const;
  // Position range of the node interval [i, j] inside L.
  std::pair<std::size_t, std::size_t> list_interval(grid::NodeId v, std::size_t i, std::size_t j) const;

  std::size_t node_length(grid::NodeId v) const { return nodes_[v].rmq.size(); }
  std::size_t node_runs(grid::NodeId v) const { return nodes_[v].rmq.runs(); }
  const succinct::SparseBitVector& node_starts(grid::NodeId v) const { return nodes_[v].m; }
  // Rebuilds L of a node explicitly (testing and statistics).
  std::vector<std::uint64_t> materialize(grid::NodeId v) const;

  // Documents whose text has p inside one metasymbol, for |p| <= ms_len.
  std::vector<DocRange> short_answer(std::string_view p) const;

  DocStats doc_stats() const;

  void serialize(io::Writer& out) const;
  static std::shared_ptr<const DocIndex> deserialize(io::Reader& in, std::shared_ptr<const index::PatternIndex> pidx);

 private:
  struct NodeLists {
    succinct::SparseBitVector m;
    succinct::RunLengthRMQ rmq;
  };
  struct Scratch;
  class RangeSource;

  DocIndex() = default;
  void build_derived();
  void report_list(RuleId a, Scratch& s) const;
  void run_range(const grid::NodeRange& nr, Scratch& s) const;

  std::shared_ptr<const index::PatternIndex> pidx_;
  ListLayout layout_ = ListLayout::Leaf;
  std::uint32_t docs_ = 0;
  InvertedLists lists_;
  std::vector<NodeLists> nodes_;
  std::map<std::string, std::vector<DocRange>, std::less<>> short_;
  std::array<std::optional<RuleId>, 256> terminal_of_{};
};

}  // namespace gdl::doclist
