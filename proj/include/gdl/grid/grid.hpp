#pragma once

#include <cstdint>
#include <vector>

#include "gdl/io/binary.hpp"
#include "gdl/succinct/bit_vector.hpp"
#include "gdl/succinct/packed_ints.hpp"

namespace gdl::grid {

using NodeId = std::uint32_t;

struct Point {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t label = 0;
  std::uint64_t weight = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// A maximal wavelet-tree node inside a query together with the sequence
// interval [i, j] (1-based) the query projects to in that node.
struct NodeRange {
  NodeId node = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t size() const { return j - i + 1; }

  friend bool operator==(const NodeRange&, const NodeRange&) = default;
};

struct GridOptions {
  double epsilon = 0.5;  // upward-tracking trade-off, in (0, 1]
  unsigned tau = 0;      // prefix-sum sampling step; 0 picks ceil(log2 p)
};

struct TrackStats {
  std::size_t hops = 0;
};

// Wavelet tree over points on [1, cols] x [1, rows]. Node (a, b) splits at
// mu = ceil((a+b)/2): its left child covers [a, mu-1] and B[k] = 0 iff the
// k-th point of the node has y < mu. Every column must hold at least one
// point; R = 1 0^{c_1 - 1} 1 0^{c_2 - 1} ... 1 maps columns to root positions.
//
// Labels and weights are stored for the root sequence, labels also for the
// leaves. Node weights are not stored: each node keeps cumulative sums every
// tau positions and resolves the rest by tracking positions up to the root.
//
// Upward tracking uses jump pointers. With H the tree height, b = max(2,
// ceil(H^eps)) and J = ceil(1/eps) - 1, a node at depth d keeps, for each of
// its positions, the position in its ancestor b^j levels up, where j <= J is
// the largest exponent with b^j dividing d. Nodes with j = 0 are crossed with
// one select.
class Grid {
 public:
  Grid() = default;
  // Points must be ordered by x (ties keep their given order).
  Grid(std::vector<Point> points, std::uint64_t cols, std::uint64_t rows, GridOptions opt = {});

  std::size_t num_points() const { return p_; }
  std::uint64_t cols() const { return cols_; }
  std::uint64_t rows() const { return rows_; }
  unsigned tau() const { return tau_; }
  double epsilon() const { return eps_; }
  const succinct::BitVector& column_map() const { return r_; }

  // Wavelet-tree shape.
  std::size_t num_nodes() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  bool is_leaf(NodeId v) const { return node(v).a == node(v).b; }
  std::uint64_t node_lo(NodeId v) const { return node(v).a; }
  std::uint64_t node_hi(NodeId v) const { return node(v).b; }
  std::uint32_t depth(NodeId v) const { return node(v).depth; }
  std::uint32_t height() const { return height_; }
  NodeId left_child(NodeId v) const { return node(v).left; }
  NodeId right_child(NodeId v) const { return node(v).right; }
  NodeId parent(NodeId v) const { return node(v).parent; }
  std::size_t node_size(NodeId v) const { return node(v).size; }
  const succinct::BitVector& node_bits(NodeId v) const { return node(v).bits; }
  // Node with y-interval [a, b], or throws RangeError.
  NodeId find_node(std::uint64_t a, std::uint64_t b) const;

  // Root interval of the points with x in [x1, x2]. x2 = x1 - 1 is the empty
  // column range and maps to an empty interval (i = j + 1).
  std::pair<std::size_t, std::size_t> map_columns(std::uint64_t x1, std::uint64_t x2) const;
  std::uint64_t column_of(std::size_t root_pos) const;

  std::vector<NodeRange> decompose(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const;
  std::size_t count(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const;
  std::vector<Point> report(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const;
  std::uint64_t sum(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const;
  // Weight sum of one node interval through the sampled prefix sums.
  std::uint64_t node_sum(const NodeRange& nr) const;

  struct LeafPosition {
    NodeId leaf = 0;
    std::size_t pos = 0;
    std::uint64_t label = 0;
  };
  LeafPosition track_down(NodeId v, std::size_t pos) const;
  std::size_t track_up(NodeId v, std::size_t pos, TrackStats* stats = nullptr) const;
  // Same result with one select per level, no jump pointers.
  std::size_t track_up_slow(NodeId v, std::size_t pos) const;

  std::uint64_t root_label(std::size_t pos) const;
  std::uint64_t root_weight(std::size_t pos) const;
  std::uint64_t leaf_label(NodeId leaf, std::size_t pos) const;
  // Labels of a node's sequence, in node order (tracks every position down).
  std::vector<std::uint64_t> node_labels(NodeId v) const;
  // Maximum hops track_up may take under the configured epsilon.
  std::size_t track_up_bound() const { return (jump_levels_ + 1) * jump_base_; }

  struct SpaceReport {
    std::uint64_t column_map = 0, node_bits = 0, root_labels = 0, root_weights = 0, leaf_labels = 0, sums = 0,
                  jumps = 0;
    std::uint64_t total() const { return column_map + node_bits + root_labels + root_weights + leaf_labels + sums + jumps; }
  };
  SpaceReport space() const;

  void serialize(io::Writer& out) const;
  static Grid deserialize(io::Reader& in);

 private:
  struct Node {
    std::uint64_t a = 0, b = 0;
    std::uint32_t depth = 0;
    NodeId parent = 0, left = 0, right = 0;
    std::size_t size = 0;
    succinct::BitVector bits;        // internal nodes only
    succinct::PackedInts sums;       // sums[k] = weight of positions 1..k*tau
    succinct::PackedInts jump;       // ancestor positions, empty when stride is 1
    std::uint32_t jump_up = 1;       // levels crossed by one jump
    succinct::PackedInts leaf_labels;
  };

  const Node& node(NodeId v) const;
  void make_shape();
  void build_derived();
  std::size_t up_one(NodeId v, std::size_t pos) const;
  void descend(NodeId v, std::size_t i, std::size_t j, std::uint64_t y1, std::uint64_t y2,
               std::vector<NodeRange>& out) const;

  std::size_t p_ = 0;
  std::uint64_t cols_ = 0, rows_ = 0;
  double eps_ = 0.5;
  unsigned tau_ = 1;
  unsigned tau_opt_ = 0;
  std::uint32_t height_ = 0;
  std::size_t jump_base_ = 2;
  std::size_t jump_levels_ = 0;
  succinct::BitVector r_;
  succinct::PackedInts root_labels_, root_weights_;
  std::vector<Node> nodes_;
};

}  // namespace gdl::grid
