#include "gdl/grid/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "gdl/error.hpp"

namespace gdl::grid {

using succinct::BitVector;
using succinct::PackedInts;

namespace {

constexpr std::uint32_t kTag = io::make_tag("GRID");

unsigned ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : static_cast<unsigned>(std::bit_width(v - 1)); }

}  // namespace

Grid::Grid(std::vector<Point> points, std::uint64_t cols, std::uint64_t rows, GridOptions opt)
    : p_(points.size()), cols_(cols), rows_(rows), eps_(opt.epsilon), tau_opt_(opt.tau) {
  if (!(eps_ > 0.0 && eps_ <= 1.0)) throw BuildError("epsilon must lie in (0, 1]");
  if ((p_ == 0) != (cols_ == 0) || (p_ == 0) != (rows_ == 0)) throw BuildError("grid bounds disagree with point count");
  std::vector<std::size_t> per_col(cols_ + 1, 0);
  for (std::size_t k = 0; k < p_; ++k) {
    const auto& pt = points[k];
    if (pt.x < 1 || pt.x > cols_ || pt.y < 1 || pt.y > rows_) throw BuildError("point outside the grid");
    if (k > 0 && pt.x < points[k - 1].x) throw BuildError("points must be sorted by x");
    ++per_col[pt.x];
  }
  for (std::uint64_t x = 1; x <= cols_; ++x)
    if (per_col[x] == 0) throw BuildError("every column must hold at least one point");

  std::vector<bool> r(p_ + 1, false);
  for (std::size_t k = 0; k < p_; ++k) r[k] = k == 0 || points[k].x != points[k - 1].x;
  r[p_] = true;
  r_ = BitVector(r);

  std::vector<std::uint64_t> labels(p_), weights(p_);
  for (std::size_t k = 0; k < p_; ++k) {
    labels[k] = points[k].label;
    weights[k] = points[k].weight;
  }
  root_labels_ = PackedInts::from_values(labels);
  root_weights_ = PackedInts::from_values(weights);

  make_shape();
  // Stable partition, level by level, tracking root indices.
  std::vector<std::vector<std::size_t>> seq(nodes_.size());
  if (!nodes_.empty()) {
    seq[0].resize(p_);
    for (std::size_t k = 0; k < p_; ++k) seq[0][k] = k;
  }
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    Node& nd = nodes_[v];
    nd.size = seq[v].size();
    if (nd.a == nd.b) {
      std::vector<std::uint64_t> lab;
      for (auto k : seq[v]) lab.push_back(labels[k]);
      nd.leaf_labels = PackedInts::from_values(lab);
    } else {
      std::uint64_t mu = (nd.a + nd.b + 1) / 2;
      std::vector<bool> bits(nd.size);
      for (std::size_t k = 0; k < nd.size; ++k) {
        bool right = points[seq[v][k]].y >= mu;
        bits[k] = right;
        seq[right ? nd.right : nd.left].push_back(seq[v][k]);
      }
      nd.bits = BitVector(bits);
    }
    std::vector<std::size_t>().swap(seq[v]);
  }
  build_derived();
}

void Grid::make_shape() {
  nodes_.clear();
  height_ = 0;
  if (rows_ == 0) return;
  // Preorder creation: parents precede children.
  struct Item {
    std::uint64_t a, b;
    NodeId parent;
    bool is_right;
    std::uint32_t depth;
  };
  std::vector<Item> stack{{1, rows_, 0, false, 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    NodeId id = static_cast<NodeId>(nodes_.size());
    Node nd;
    nd.a = it.a;
    nd.b = it.b;
    nd.depth = it.depth;
    nd.parent = it.parent;
    nodes_.push_back(std::move(nd));
    height_ = std::max(height_, it.depth);
    if (id != 0) {
      if (it.is_right)
        nodes_[it.parent].right = id;
      else
        nodes_[it.parent].left = id;
    }
    if (it.a < it.b) {
      std::uint64_t mu = (it.a + it.b + 1) / 2;
      stack.push_back({mu, it.b, id, true, it.depth + 1});
      stack.push_back({it.a, mu - 1, id, false, it.depth + 1});
    }
  }
}

void Grid::build_derived() {
  tau_ = tau_opt_ != 0 ? tau_opt_ : std::max(1u, ceil_log2(p_));
  jump_base_ = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(height_), eps_) - 1e-9)));
  jump_levels_ = static_cast<std::size_t>(std::ceil(1.0 / eps_ - 1e-9)) - 1;
  if (nodes_.empty()) return;

  std::uint64_t total = 0;
  for (std::size_t k = 0; k < p_; ++k) total += root_weights_.get(k);
  unsigned sum_width = succinct::bit_width_of(total);

  // in_parent[v][k]: position in parent of position k+1 of v.
  std::vector<std::vector<std::size_t>> in_parent(nodes_.size());
  std::vector<std::vector<std::size_t>> to_root(nodes_.size());
  to_root[0].resize(p_);
  for (std::size_t k = 0; k < p_; ++k) to_root[0][k] = k + 1;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    Node& nd = nodes_[v];
    if (nd.a != nd.b) {
      for (std::size_t k = 1; k <= nd.size; ++k) {
        NodeId c = nd.bits.get(k) ? nd.right : nd.left;
        in_parent[c].push_back(k);
        to_root[c].push_back(to_root[v][k - 1]);
      }
    }
    std::size_t blocks = nd.size / tau_;
    nd.sums = PackedInts(blocks + 1, sum_width);
    std::uint64_t acc = 0;
    for (std::size_t k = 1; k <= nd.size; ++k) {
      acc += root_weights_.get(to_root[v][k - 1] - 1);
      if (k % tau_ == 0) nd.sums.set(k / tau_, acc);
    }
    std::uint32_t stride = 1;
    std::uint64_t pw = 1;
    for (std::size_t j = 1; j <= jump_levels_; ++j) {
      pw *= jump_base_;
      if (pw > nd.depth || nd.depth % pw != 0) break;
      stride = static_cast<std::uint32_t>(pw);
    }
    nd.jump_up = stride;
    nd.jump = PackedInts();
    if (stride > 1) {
      std::vector<std::uint64_t> target(nd.size);
      for (std::size_t k = 1; k <= nd.size; ++k) {
        std::size_t pos = k;
        NodeId u = v;
        for (std::uint32_t s = 0; s < stride; ++s) {
          pos = in_parent[u][pos - 1];
          u = nodes_[u].parent;
        }
        target[k - 1] = pos;
      }
      nd.jump = PackedInts::from_values(target);
    }
  }
}

const Grid::Node& Grid::node(NodeId v) const {
  if (v >= nodes_.size()) throw RangeError("unknown wavelet-tree node");
  return nodes_[v];
}

NodeId Grid::find_node(std::uint64_t a, std::uint64_t b) const {
  if (nodes_.empty()) throw RangeError("empty grid has no nodes");
  NodeId v = 0;
  while (true) {
    const Node& nd = nodes_[v];
    if (nd.a == a && nd.b == b) return v;
    if (nd.a == nd.b || a < nd.a || b > nd.b) throw RangeError("no node with that y-interval");
    std::uint64_t mu = (nd.a + nd.b + 1) / 2;
    if (b < mu)
      v = nd.left;
    else if (a >= mu)
      v = nd.right;
    else
      throw RangeError("no node with that y-interval");
  }
}

std::pair<std::size_t, std::size_t> Grid::map_columns(std::uint64_t x1, std::uint64_t x2) const {
  if (x1 < 1 || x2 > cols_ || x1 > x2 + 1) throw RangeError("column range out of bounds");
  return {r_.select1(x1), r_.select1(x2 + 1) - 1};
}

std::uint64_t Grid::column_of(std::size_t root_pos) const {
  if (root_pos < 1 || root_pos > p_) throw RangeError("root position out of range");
  return r_.rank1(root_pos);
}

void Grid::descend(NodeId v, std::size_t i, std::size_t j, std::uint64_t y1, std::uint64_t y2,
                   std::vector<NodeRange>& out) const {
  if (i > j) return;
  const Node& nd = nodes_[v];
  if (nd.b < y1 || nd.a > y2) return;
  if (y1 <= nd.a && nd.b <= y2) {
    out.push_back({v, i, j});
    return;
  }
  descend(nd.left, nd.bits.rank0(i - 1) + 1, nd.bits.rank0(j), y1, y2, out);
  descend(nd.right, nd.bits.rank1(i - 1) + 1, nd.bits.rank1(j), y1, y2, out);
}

std::vector<NodeRange> Grid::decompose(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const {
  std::vector<NodeRange> out;
  if (x1 > x2 || y1 > y2) return out;
  if (x1 < 1 || x2 > cols_ || y1 < 1 || y2 > rows_) throw RangeError("rectangle out of bounds");
  auto [i, j] = map_columns(x1, x2);
  descend(0, i, j, y1, y2, out);
  return out;
}

std::size_t Grid::count(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const {
  std::size_t c = 0;
  for (const auto& nr : decompose(x1, x2, y1, y2)) c += nr.size();
  return c;
}

std::vector<Point> Grid::report(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const {
  std::vector<Point> out;
  for (const auto& nr : decompose(x1, x2, y1, y2)) {
    for (std::size_t k = nr.i; k <= nr.j; ++k) {
      auto leaf = track_down(nr.node, k);
      std::size_t rp = track_up(nr.node, k);
      out.push_back({column_of(rp), nodes_[leaf.leaf].a, leaf.label, root_weights_.get(rp - 1)});
    }
  }
  return out;
}

std::uint64_t Grid::node_sum(const NodeRange& nr) const {
  const Node& nd = node(nr.node);
  if (nr.i < 1 || nr.i > nr.j || nr.j > nd.size) throw RangeError("node interval out of range");
  auto weight = [&](std::size_t k) { return root_weights_.get(track_up(nr.node, k) - 1); };
  std::size_t k1 = (nr.i - 1 + tau_ - 1) / tau_;  // first sample boundary at or after i-1
  std::size_t k2 = nr.j / tau_;
  std::uint64_t s = 0;
  if (k1 >= k2) {
    for (std::size_t k = nr.i; k <= nr.j; ++k) s += weight(k);
    return s;
  }
  s = nd.sums.get(k2) - nd.sums.get(k1);
  for (std::size_t k = nr.i; k <= k1 * tau_; ++k) s += weight(k);
  for (std::size_t k = k2 * tau_ + 1; k <= nr.j; ++k) s += weight(k);
  return s;
}

std::uint64_t Grid::sum(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const {
  std::uint64_t s = 0;
  for (const auto& nr : decompose(x1, x2, y1, y2)) s += node_sum(nr);
  return s;
}

Grid::LeafPosition Grid::track_down(NodeId v, std::size_t pos) const {
  if (pos < 1 || pos > node(v).size) throw RangeError("node position out of range");
  while (nodes_[v].a != nodes_[v].b) {
    const Node& nd = nodes_[v];
    if (nd.bits.get(pos)) {
      pos = nd.bits.rank1(pos);
      v = nd.right;
    } else {
      pos = nd.bits.rank0(pos);
      v = nd.left;
    }
  }
  return {v, pos, nodes_[v].leaf_labels.get(pos - 1)};
}

std::size_t Grid::up_one(NodeId v, std::size_t pos) const {
  const Node& par = nodes_[nodes_[v].parent];
  return par.left == v ? par.bits.select0(pos) : par.bits.select1(pos);
}

std::size_t Grid::track_up(NodeId v, std::size_t pos, TrackStats* stats) const {
  if (pos < 1 || pos > node(v).size) throw RangeError("node position out of range");
  while (v != 0) {
    const Node& nd = nodes_[v];
    if (nd.jump_up > 1) {
      pos = nd.jump.get(pos - 1);
      for (std::uint32_t s = 0; s < nd.jump_up; ++s) v = nodes_[v].parent;
    } else {
      pos = up_one(v, pos);
      v = nd.parent;
    }
    if (stats) ++stats->hops;
  }
  return pos;
}

std::size_t Grid::track_up_slow(NodeId v, std::size_t pos) const {
  if (pos < 1 || pos > node(v).size) throw RangeError("node position out of range");
  while (v != 0) {
    pos = up_one(v, pos);
    v = nodes_[v].parent;
  }
  return pos;
}

std::uint64_t Grid::root_label(std::size_t pos) const {
  if (pos < 1 || pos > p_) throw RangeError("root position out of range");
  return root_labels_.get(pos - 1);
}

std::uint64_t Grid::root_weight(std::size_t pos) const {
  if (pos < 1 || pos > p_) throw RangeError("root position out of range");
  return root_weights_.get(pos - 1);
}

std::uint64_t Grid::leaf_label(NodeId leaf, std::size_t pos) const {
  const Node& nd = node(leaf);
  if (nd.a != nd.b) throw RangeError("not a leaf");
  if (pos < 1 || pos > nd.size) throw RangeError("leaf position out of range");
  return nd.leaf_labels.get(pos - 1);
}

std::vector<std::uint64_t> Grid::node_labels(NodeId v) const {
  std::vector<std::uint64_t> out;
  for (std::size_t k = 1; k <= node(v).size; ++k) out.push_back(track_down(v, k).label);
  return out;
}

Grid::SpaceReport Grid::space() const {
  SpaceReport s;
  s.column_map = r_.size_in_bits();
  s.root_labels = root_labels_.size_in_bits();
  s.root_weights = root_weights_.size_in_bits();
  for (const auto& nd : nodes_) {
    s.node_bits += nd.bits.size_in_bits();
    s.leaf_labels += nd.leaf_labels.size_in_bits();
    s.sums += nd.sums.size_in_bits();
    s.jumps += nd.jump.size_in_bits();
  }
  return s;
}

void Grid::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    std::uint64_t eps_bits = 0;
    std::memcpy(&eps_bits, &eps_, sizeof eps_bits);
    w.u64(eps_bits);
    w.u32(tau_opt_);
    w.u64(cols_);
    w.u64(rows_);
    w.u64(p_);
    r_.serialize(w);
    root_labels_.serialize(w);
    root_weights_.serialize(w);
    for (const auto& nd : nodes_) {
      if (nd.a == nd.b)
        nd.leaf_labels.serialize(w);
      else
        nd.bits.serialize(w);
    }
  });
}

Grid Grid::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  Grid g;
  std::uint64_t eps_bits = r.u64();
  std::memcpy(&g.eps_, &eps_bits, sizeof eps_bits);
  if (!(g.eps_ > 0.0 && g.eps_ <= 1.0)) throw FormatError("grid epsilon out of range");
  g.tau_opt_ = r.u32();
  g.cols_ = r.u64();
  g.rows_ = r.u64();
  g.p_ = r.u64();
  if (g.rows_ > g.p_ || g.cols_ > g.p_) throw FormatError("grid bounds exceed point count");
  g.r_ = BitVector::deserialize(r);
  g.root_labels_ = PackedInts::deserialize(r);
  g.root_weights_ = PackedInts::deserialize(r);
  if (g.r_.size() != g.p_ + 1 || g.r_.count_ones() != g.cols_ + 1 || !g.r_.get(g.p_ + 1) ||
      (g.p_ > 0 && !g.r_.get(1)) || g.root_labels_.size() != g.p_ || g.root_weights_.size() != g.p_)
    throw FormatError("grid root arrays inconsistent");
  g.make_shape();
  if (!g.nodes_.empty()) g.nodes_[0].size = g.p_;
  for (NodeId v = 0; v < g.nodes_.size(); ++v) {
    Node& nd = g.nodes_[v];
    if (nd.a == nd.b) {
      nd.leaf_labels = PackedInts::deserialize(r);
      if (nd.leaf_labels.size() != nd.size) throw FormatError("leaf label count mismatch");
    } else {
      nd.bits = BitVector::deserialize(r);
      if (nd.bits.size() != nd.size) throw FormatError("node bitvector length mismatch");
      g.nodes_[nd.right].size = nd.bits.count_ones();
      g.nodes_[nd.left].size = nd.size - g.nodes_[nd.right].size;
    }
  }
  r.expect_end();
  g.build_derived();
  return g;
}

}  // namespace gdl::grid
