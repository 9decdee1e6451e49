#include "gdl/index/pattern_index.hpp"

#include <algorithm>
#include <bit>

#include "gdl/error.hpp"

namespace gdl::index {

using grammar::BackwardCursor;
using grammar::ForwardCursor;

namespace {

constexpr std::uint32_t kTag = io::make_tag("PIDX");

int sym_cmp(char a, char b) {
  auto x = static_cast<unsigned char>(a), y = static_cast<unsigned char>(b);
  return x < y ? -1 : (x > y ? 1 : 0);
}

template <class Cursor>
int compare_rules(const grammar::Grammar& g, RuleId a, RuleId b) {
  Cursor ca(g, a), cb(g, b);
  for (; !ca.done() && !cb.done(); ca.next(), cb.next())
    if (int c = sym_cmp(ca.get(), cb.get())) return c;
  if (ca.done() && cb.done()) return 0;
  return ca.done() ? -1 : 1;
}

// Compares the first |p| symbols walked by the cursor against p; a walk that
// ends early sorts first.
template <class Cursor>
int compare_prefix(const grammar::Grammar& g, RuleId a, std::string_view p) {
  Cursor c(g, a);
  for (char x : p) {
    if (c.done()) return -1;
    if (int d = sym_cmp(c.get(), x)) return d;
    c.next();
  }
  return 0;
}

template <class Cursor>
std::vector<RuleId> sorted_classes(const grammar::Grammar& g, std::vector<RuleId> ids, std::vector<std::uint64_t>& rank_of) {
  std::sort(ids.begin(), ids.end(), [&](RuleId a, RuleId b) {
    int c = compare_rules<Cursor>(g, a, b);
    return c != 0 ? c < 0 : a < b;
  });
  std::vector<RuleId> reps;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k == 0 || compare_rules<Cursor>(g, ids[k - 1], ids[k]) != 0) reps.push_back(ids[k]);
    rank_of[ids[k]] = reps.size();
  }
  return reps;
}

template <class Cmp>
std::pair<std::uint64_t, std::uint64_t> equal_range(std::size_t n, Cmp&& cmp) {
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cmp(mid) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  std::size_t first = lo;
  hi = n;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cmp(mid) <= 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return {first + 1, lo};
}

}  // namespace

PatternIndex::PatternIndex(std::shared_ptr<const grammar::Grammar> g, grid::GridOptions opt) : g_(std::move(g)) {
  if (!g_) throw BuildError("pattern index needs a grammar");
  const auto& gr = *g_;
  std::vector<bool> is_left(gr.num_rules(), false), is_right(gr.num_rules(), false);
  for (RuleId a = 0; a < gr.num_rules(); ++a) {
    if (gr.is_terminal(a)) continue;
    is_left[gr.rule(a).left] = true;
    is_right[gr.rule(a).right] = true;
  }
  std::vector<RuleId> lefts, rights;
  for (RuleId a = 0; a < gr.num_rules(); ++a) {
    if (is_left[a]) lefts.push_back(a);
    if (is_right[a]) rights.push_back(a);
  }
  std::vector<std::uint64_t> col_of(gr.num_rules(), 0), row_of(gr.num_rules(), 0);
  col_rep_ = sorted_classes<BackwardCursor>(gr, lefts, col_of);
  row_rep_ = sorted_classes<ForwardCursor>(gr, rights, row_of);

  count_ = grammar::occ_counts(gr);
  std::vector<grid::Point> pts;
  for (RuleId a = 0; a < gr.num_rules(); ++a) {
    if (gr.is_terminal(a)) continue;
    pts.push_back({col_of[gr.rule(a).left], row_of[gr.rule(a).right], a, count_[a]});
  }
  std::stable_sort(pts.begin(), pts.end(), [](const grid::Point& a, const grid::Point& b) { return a.x < b.x; });
  grid_ = grid::Grid(std::move(pts), col_rep_.size(), row_rep_.size(), opt);
  build_derived();
}

void PatternIndex::build_derived() {
  const auto& gr = *g_;
  count_ = grammar::occ_counts(gr);
  uses_.assign(gr.num_rules(), {});
  start_docs_.assign(gr.num_rules(), {});
  terminals_.clear();
  for (RuleId a = 0; a < gr.num_rules(); ++a) {
    const auto& x = gr.rule(a);
    if (x.terminal) {
      terminals_.push_back(a);
      continue;
    }
    uses_[x.left].push_back({a, 0});
    uses_[x.right].push_back({a, gr.exp_len(x.left)});
  }
  doc_start_.clear();
  std::uint64_t at = 1;
  for (std::uint32_t d = 1; d <= gr.num_docs(); ++d) {
    start_docs_[gr.start(d)].push_back(d);
    doc_start_.push_back(at);
    at += gr.doc_length(d);
  }
}

int PatternIndex::compare_left(RuleId b, std::string_view p1rev) const {
  return compare_prefix<BackwardCursor>(*g_, b, p1rev);
}

int PatternIndex::compare_right(RuleId c, std::string_view p2) const {
  return compare_prefix<ForwardCursor>(*g_, c, p2);
}

std::pair<std::uint64_t, std::uint64_t> PatternIndex::search_left(std::string_view p1rev) const {
  if (p1rev.empty()) throw DomainError("search string must be nonempty");
  return equal_range(col_rep_.size(), [&](std::size_t k) { return compare_left(col_rep_[k], p1rev); });
}

std::pair<std::uint64_t, std::uint64_t> PatternIndex::search_right(std::string_view p2) const {
  if (p2.empty()) throw DomainError("search string must be nonempty");
  return equal_range(row_rep_.size(), [&](std::size_t k) { return compare_right(row_rep_[k], p2); });
}

std::vector<CutRectangle> PatternIndex::cut_rectangles(std::string_view p) const {
  std::vector<CutRectangle> out;
  for (std::size_t k = 1; k < p.size(); ++k) {
    std::string p1rev(p.substr(0, k));
    std::reverse(p1rev.begin(), p1rev.end());
    auto [x1, x2] = search_left(p1rev);
    if (x1 > x2) continue;
    auto [y1, y2] = search_right(p.substr(k));
    if (y1 > y2) continue;
    out.push_back({k, x1, x2, y1, y2});
  }
  return out;
}

std::vector<Primary> PatternIndex::primary_occurrences(std::string_view p) const {
  std::vector<Primary> out;
  for (const auto& c : cut_rectangles(p)) {
    for (const auto& pt : grid_.report(c.x1, c.x2, c.y1, c.y2)) {
      auto a = static_cast<RuleId>(pt.label);
      out.push_back({a, c.split, g_->exp_len(g_->rule(a).left) - c.split + 1});
    }
  }
  return out;
}

std::vector<Primary> PatternIndex::leaf_primaries(std::string_view p) const {
  std::vector<Primary> out;
  if (p.empty() || p.size() > g_->ms_len()) return out;
  for (RuleId t : terminals_) {
    std::string_view s = g_->rule(t).symbols;
    for (auto at = s.find(p); at != std::string_view::npos; at = s.find(p, at + 1)) out.push_back({t, 0, at + 1});
  }
  return out;
}

std::uint64_t PatternIndex::count(std::string_view p) const {
  if (p.empty()) throw DomainError("pattern must be nonempty");
  std::uint64_t n = 0;
  for (const auto& c : cut_rectangles(p)) n += grid_.sum(c.x1, c.x2, c.y1, c.y2);
  for (const auto& lp : leaf_primaries(p)) n += count_[lp.rule];
  return n;
}

std::vector<Occurrence> PatternIndex::locate(std::string_view p) const {
  if (p.empty()) throw DomainError("pattern must be nonempty");
  auto prim = primary_occurrences(p);
  auto leaves = leaf_primaries(p);
  prim.insert(prim.end(), leaves.begin(), leaves.end());
  std::vector<Occurrence> out;
  std::vector<std::pair<RuleId, std::uint64_t>> stack;
  for (const auto& pr : prim) {
    stack.emplace_back(pr.rule, pr.offset);
    while (!stack.empty()) {
      auto [x, off] = stack.back();
      stack.pop_back();
      for (auto d : start_docs_[x]) out.push_back({d, off, doc_start_[d - 1] + off - 1});
      for (const auto& u : uses_[x]) stack.emplace_back(u.parent, off + u.offset);
    }
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw ConsistencyError("two primary occurrences expanded to the same position");
  return out;
}

std::uint64_t PatternIndex::uses_bits() const {
  std::uint64_t w = std::max<std::uint64_t>(1, std::bit_width(g_->num_rules()));
  std::uint64_t o = std::max<std::uint64_t>(1, std::bit_width(g_->total_length()));
  std::uint64_t bits = 0;
  for (const auto& u : uses_) bits += u.size() * (w + o);
  return bits;
}

void PatternIndex::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    grid_.serialize(w);
    w.u32_vector(std::span<const RuleId>(col_rep_));
    w.u32_vector(std::span<const RuleId>(row_rep_));
  });
}

std::shared_ptr<const PatternIndex> PatternIndex::deserialize(io::Reader& in, std::shared_ptr<const grammar::Grammar> g) {
  auto r = in.blob(kTag, 1);
  std::shared_ptr<PatternIndex> pi(new PatternIndex());
  pi->g_ = std::move(g);
  pi->grid_ = grid::Grid::deserialize(r);
  pi->col_rep_ = r.u32_vector();
  pi->row_rep_ = r.u32_vector();
  r.expect_end();
  std::size_t binary = 0;
  for (const auto& x : pi->g_->rules()) binary += x.terminal ? 0 : 1;
  if (pi->grid_.cols() != pi->col_rep_.size() || pi->grid_.rows() != pi->row_rep_.size() ||
      pi->grid_.num_points() != binary)
    throw FormatError("pattern index does not match the grammar");
  for (auto id : pi->col_rep_)
    if (id >= pi->g_->num_rules()) throw FormatError("column representative out of range");
  for (auto id : pi->row_rep_)
    if (id >= pi->g_->num_rules()) throw FormatError("row representative out of range");
  for (std::size_t k = 1; k <= binary; ++k) {
    auto label = pi->grid_.root_label(k);
    if (label >= pi->g_->num_rules() || pi->g_->is_terminal(static_cast<RuleId>(label)))
      throw FormatError("grid label is not a binary rule");
  }
  pi->build_derived();
  return pi;
}

}  // namespace gdl::index
