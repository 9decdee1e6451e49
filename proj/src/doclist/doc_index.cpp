#include "gdl/doclist/doc_index.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "gdl/doclist/leftist.hpp"
#include "gdl/error.hpp"

namespace gdl::doclist {

namespace {
constexpr std::uint32_t kTag = io::make_tag("DOCL");
}

const char* layout_name(ListLayout l) { return l == ListLayout::Leaf ? "leaf" : "root"; }

ListLayout parse_layout(std::string_view s) {
  if (s == "leaf") return ListLayout::Leaf;
  if (s == "root") return ListLayout::Root;
  throw DomainError("unknown list layout: " + std::string(s));
}

ListingStats& ListingStats::operator+=(const ListingStats& o) {
  rmq_calls += o.rmq_calls;
  lists_opened += o.lists_opened;
  elements_scanned += o.elements_scanned;
  nodes_visited += o.nodes_visited;
  track_hops += o.track_hops;
  return *this;
}

struct DocIndex::Scratch {
  succinct::BitVector& v;
  std::vector<std::uint32_t> answers;
  succinct::BitVector local;
  std::vector<std::uint32_t> touched;
  ListingStats stats;
  std::unordered_set<RuleId> opened_whole;

  Scratch(succinct::BitVector& answer_marks, std::uint32_t docs) : v(answer_marks), local(docs) {}

  void report(std::uint32_t d) {
    if (v.get(d)) return;
    v.set(d, true);
    answers.push_back(d);
  }
};

// Source for the run-head listing loop over one node; L is read through M
// and the inverted lists, never stored.
class DocIndex::RangeSource {
 public:
  RangeSource(const DocIndex& dix, grid::NodeId v, Scratch& s) : dix_(dix), v_(v), s_(s), node_(dix.nodes_[v]) {}
  ~RangeSource() {
    for (auto d : s_.touched) s_.local.set(d, false);
    s_.touched.clear();
  }
  RangeSource(const RangeSource&) = delete;
  RangeSource& operator=(const RangeSource&) = delete;

  std::optional<std::size_t> scan(std::size_t x, std::size_t hi) {
    std::size_t t = node_.m.rank1(x);
    std::size_t u = x - node_.m.select1(t) + 1;
    InvertedLists::Cursor c = open(t, u);
    for (;;) {
      std::uint32_t d = c.get();
      ++s_.stats.elements_scanned;
      if (seen(d)) return x;
      see(d, x);
      if (++x > hi) return std::nullopt;
      c.next();
      if (c.done()) c = open(++t, 1);
    }
  }

  succinct::RunCandidates candidates(std::size_t lo, std::size_t hi) {
    ++s_.stats.rmq_calls;
    return node_.rmq.candidates(lo, hi);
  }

  std::uint32_t value(std::size_t k) {
    std::size_t t = node_.m.rank1(k);
    std::size_t u = k - node_.m.select1(t) + 1;
    ++s_.stats.lists_opened;
    ++s_.stats.elements_scanned;
    return dix_.lists_.doc_at(dix_.node_rule(v_, t, &s_.stats), u);
  }

  bool seen(std::uint32_t d) const { return s_.local.get(d); }

  void see(std::uint32_t d, std::size_t) {
    s_.local.set(d, true);
    s_.touched.push_back(d);
    s_.report(d);
  }

 private:
  InvertedLists::Cursor open(std::size_t t, std::size_t u) {
    if (t > dix_.pidx_->grid().node_size(v_)) throw ConsistencyError("node list marks disagree with list lengths");
    ++s_.stats.lists_opened;
    return InvertedLists::Cursor(dix_.lists_, dix_.node_rule(v_, t, &s_.stats), u);
  }

  const DocIndex& dix_;
  grid::NodeId v_;
  Scratch& s_;
  const NodeLists& node_;
};

DocIndex::DocIndex(std::shared_ptr<const index::PatternIndex> pidx, ListLayout layout)
    : pidx_(std::move(pidx)), layout_(layout) {
  if (!pidx_) throw BuildError("document index needs a pattern index");
  const auto& g = pidx_->grammar();
  const auto& grid = pidx_->grid();
  docs_ = g.num_docs();
  lists_ = InvertedLists(g);

  std::vector<std::size_t> last(docs_ + 1, 0);
  nodes_.resize(grid.num_points() == 0 ? 0 : grid.num_nodes());
  for (grid::NodeId v = 0; v < nodes_.size(); ++v) {
    std::vector<std::uint64_t> starts, l;
    std::vector<std::int64_t> e;
    for (auto a : grid.node_labels(v)) {
      auto docs = lists_.decode(static_cast<RuleId>(a));
      if (docs.empty()) throw ConsistencyError("rule in the grid occurs in no document");
      starts.push_back(l.size() + 1);
      for (auto d : docs) {
        l.push_back(d);
        e.push_back(static_cast<std::int64_t>(last[d]));
        last[d] = l.size();
      }
    }
    for (auto d : l) last[d] = 0;
    nodes_[v].m = succinct::SparseBitVector(l.size(), starts);
    nodes_[v].rmq = succinct::RunLengthRMQ(e);
  }
  build_derived();
}

void DocIndex::build_derived() {
  const auto& g = pidx_->grammar();
  terminal_of_.fill(std::nullopt);
  short_.clear();
  std::map<std::string, std::vector<std::uint32_t>, std::less<>> docs;
  for (RuleId a = 0; a < g.num_rules(); ++a) {
    if (!g.is_terminal(a)) continue;
    const auto& s = g.rule(a).symbols;
    if (s.size() == 1) terminal_of_[static_cast<unsigned char>(s[0])] = a;
    if (g.ms_len() == 1) continue;
    auto list = lists_.decode(a);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t len = 1; i + len <= s.size(); ++len) {
        auto& out = docs[s.substr(i, len)];
        out.insert(out.end(), list.begin(), list.end());
      }
    }
  }
  for (auto& [key, ds] : docs) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    auto& ranges = short_[key];
    for (auto d : ds) {
      if (!ranges.empty() && ranges.back().second + 1 == d)
        ranges.back().second = d;
      else
        ranges.emplace_back(d, d);
    }
  }
}

RuleId DocIndex::node_rule(grid::NodeId v, std::size_t k, ListingStats* stats) const {
  const auto& grid = pidx_->grid();
  if (layout_ == ListLayout::Leaf) {
    auto lp = grid.track_down(v, k);
    if (stats) stats->track_hops += grid.depth(lp.leaf) - grid.depth(v);
    return static_cast<RuleId>(lp.label);
  }
  grid::TrackStats ts;
  auto pos = grid.track_up(v, k, &ts);
  if (stats) stats->track_hops += ts.hops;
  return static_cast<RuleId>(grid.root_label(pos));
}

std::pair<std::size_t, std::size_t> DocIndex::list_interval(grid::NodeId v, std::size_t i, std::size_t j) const {
  const auto& m = nodes_.at(v).m;
  if (i < 1 || i > j || j > m.count_ones()) throw RangeError("node interval out of range");
  std::size_t hi = j == m.count_ones() ? m.size() : m.select1(j + 1) - 1;
  return {m.select1(i), hi};
}

std::vector<std::uint64_t> DocIndex::materialize(grid::NodeId v) const {
  std::vector<std::uint64_t> l;
  for (auto a : pidx_->grid().node_labels(v))
    for (auto d : lists_.decode(static_cast<RuleId>(a))) l.push_back(d);
  return l;
}

std::vector<DocRange> DocIndex::short_answer(std::string_view p) const {
  const auto& g = pidx_->grammar();
  if (p.empty() || p.size() > g.ms_len()) return {};
  if (g.ms_len() == 1) {
    auto t = terminal_of_[static_cast<unsigned char>(p[0])];
    return t ? lists_.ranges(*t) : std::vector<DocRange>{};
  }
  auto it = short_.find(p);
  return it == short_.end() ? std::vector<DocRange>{} : it->second;
}

void DocIndex::report_list(RuleId a, Scratch& s) const {
  ++s.stats.lists_opened;
  for (std::size_t r = 0; r < lists_.num_ranges(a); ++r) {
    auto [lo, hi] = lists_.range(a, r);
    for (auto d = lo; d <= hi; ++d) {
      ++s.stats.elements_scanned;
      s.report(d);
    }
  }
}

void DocIndex::run_range(const grid::NodeRange& nr, Scratch& s) const {
  ++s.stats.nodes_visited;
  if (nr.size() == 1) {
    RuleId a = node_rule(nr.node, nr.i, &s.stats);
    if (s.opened_whole.insert(a).second) report_list(a, s);
    return;
  }
  auto [lo, hi] = list_interval(nr.node, nr.i, nr.j);
  RangeSource src(*this, nr.node, s);
  detail::actual_variant(src, lo, hi);
}

std::vector<std::uint32_t> DocIndex::range_distinct(const grid::NodeRange& nr, succinct::BitVector& v,
                                                    ListingStats* stats) const {
  if (v.size() < docs_) throw RangeError("answer bitvector shorter than D");
  if (nr.node >= nodes_.size()) throw RangeError("node out of range");
  Scratch s(v, docs_);
  run_range(nr, s);
  if (stats) *stats += s.stats;
  return std::move(s.answers);
}

std::vector<std::uint32_t> DocIndex::list_documents(std::string_view p, ListingStats* stats) const {
  if (p.empty()) throw DomainError("pattern must be nonempty");
  succinct::BitVector v(docs_);
  Scratch s(v, docs_);
  if (p.size() <= pidx_->grammar().ms_len()) {
    ++s.stats.lists_opened;
    for (auto [lo, hi] : short_answer(p))
      for (auto d = lo; d <= hi; ++d) s.report(d);
  }
  const auto& grid = pidx_->grid();
  for (const auto& cut : pidx_->cut_rectangles(p))
    for (const auto& nr : grid.decompose(cut.x1, cut.x2, cut.y1, cut.y2)) run_range(nr, s);
  for (auto d : s.answers) v.set(d, false);
  if (v.count_ones() != 0) throw ConsistencyError("answer marks not cleared");
  if (stats) *stats += s.stats;
  std::sort(s.answers.begin(), s.answers.end());
  return std::move(s.answers);
}

DocStats DocIndex::doc_stats() const {
  DocStats st;
  const auto& grid = pidx_->grid();
  st.level_runs.assign(grid.height() + 1, 0);
  st.level_nodes.assign(grid.height() + 1, 0);
  for (grid::NodeId v = 0; v < nodes_.size(); ++v) {
    auto d = grid.depth(v);
    if (d >= st.level_runs.size()) {
      st.level_runs.resize(d + 1, 0);
      st.level_nodes.resize(d + 1, 0);
    }
    st.level_runs[d] += nodes_[v].rmq.runs();
    ++st.level_nodes[d];
    st.total_runs += nodes_[v].rmq.runs();
    st.m_bits += nodes_[v].m.size_in_bits();
    st.rmq_bits += nodes_[v].rmq.size_in_bits();
  }
  while (!st.level_nodes.empty() && st.level_nodes.back() == 0) {
    st.level_nodes.pop_back();
    st.level_runs.pop_back();
  }
  st.grammar_bits = pidx_->grammar().size_in_bits();
  st.grid_bits = grid.space().total();
  st.uses_bits = pidx_->uses_bits();
  st.list_bits = lists_.size_in_bits();
  st.list_ranges = lists_.total_ranges();
  std::uint64_t w = std::max<int>(1, std::bit_width(docs_));
  for (const auto& [key, ranges] : short_) st.short_bits += 8 * key.size() + 2 * w * ranges.size() + 64;
  return st;
}

void DocIndex::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u8(static_cast<std::uint8_t>(layout_));
    w.u32(docs_);
    lists_.serialize(w);
    w.u64(nodes_.size());
    for (const auto& n : nodes_) {
      n.m.serialize(w);
      n.rmq.serialize(w);
    }
  });
}

std::shared_ptr<const DocIndex> DocIndex::deserialize(io::Reader& in, std::shared_ptr<const index::PatternIndex> pidx) {
  auto r = in.blob(kTag, 1);
  std::shared_ptr<DocIndex> dix(new DocIndex());
  dix->pidx_ = std::move(pidx);
  auto layout = r.u8();
  if (layout > 1) throw FormatError("unknown list layout");
  dix->layout_ = static_cast<ListLayout>(layout);
  dix->docs_ = r.u32();
  dix->lists_ = InvertedLists::deserialize(r);
  auto n = r.u64();
  if (n > r.remaining()) throw FormatError("node count exceeds data");
  dix->nodes_.resize(n);
  for (auto& node : dix->nodes_) {
    node.m = succinct::SparseBitVector::deserialize(r);
    node.rmq = succinct::RunLengthRMQ::deserialize(r);
  }
  r.expect_end();
  const auto& g = dix->pidx_->grammar();
  const auto& grid = dix->pidx_->grid();
  if (dix->docs_ != g.num_docs() || dix->lists_.num_docs() != g.num_docs() || dix->lists_.num_lists() != g.num_rules())
    throw FormatError("document index does not match the grammar");
  if (n != (grid.num_points() == 0 ? 0 : grid.num_nodes())) throw FormatError("document index node count mismatch");
  for (grid::NodeId v = 0; v < n; ++v) {
    const auto& node = dix->nodes_[v];
    if (node.m.count_ones() != grid.node_size(v) || node.m.size() != node.rmq.size() ||
        (node.m.size() > 0 && !node.m.get(1)))
      throw FormatError("node list marks do not match the grid");
  }
  dix->build_derived();
  return dix;
}

}  // namespace gdl::doclist
