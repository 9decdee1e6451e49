#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "gdl/error.hpp"
#include "gdl/grid/grid.hpp"

using namespace gdl;
using namespace gdl::grid;

namespace {

// Root sequence of the example grammar's grid, in root-position order.
const std::vector<std::uint64_t> kRootY = {2, 4, 4, 5, 3, 5, 7, 6, 1, 1, 1, 1, 1};
const std::vector<std::string> kRootNames = {"ab", "cada", "kada", "S3", "S1", "S2", "abra",
                                             "abla", "ca", "da", "ka", "la", "ra"};
const std::vector<std::uint64_t> kRootX = {1, 2, 3, 4, 5, 5, 6, 6, 7, 8, 9, 10, 11};

// One point per column: the wavelet-tree view over 13 root positions.
Grid root_grid() {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < kRootY.size(); ++k) pts.push_back({k + 1, kRootY[k], k, 1});
  return Grid(pts, 13, 7);
}

// Columns grouped by distinct left symbol.
Grid grouped_grid() {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < kRootY.size(); ++k) pts.push_back({kRootX[k], kRootY[k], k, 1});
  return Grid(pts, 11, 7);
}

std::vector<Point> random_points(std::mt19937_64& rng, std::uint64_t cols, std::uint64_t rows, std::size_t extra,
                                 std::uint64_t max_w) {
  std::vector<Point> pts;
  for (std::uint64_t x = 1; x <= cols; ++x) pts.push_back({x, 1 + rng() % rows, 0, rng() % (max_w + 1)});
  for (std::size_t k = 0; k < extra; ++k) pts.push_back({1 + rng() % cols, 1 + rng() % rows, 0, rng() % (max_w + 1)});
  std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k].label = k;
  return pts;
}

std::vector<Point> scan(const std::vector<Point>& pts, std::uint64_t x1, std::uint64_t x2, std::uint64_t y1,
                        std::uint64_t y2) {
  std::vector<Point> out;
  for (const auto& p : pts)
    if (p.x >= x1 && p.x <= x2 && p.y >= y1 && p.y <= y2) out.push_back(p);
  return out;
}

bool by_label(const Point& a, const Point& b) { return a.label < b.label; }

std::size_t decompose_bound(std::uint64_t rows) {
  unsigned lg = rows <= 1 ? 0 : static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(rows))));
  return std::max<std::size_t>(1, 2 * lg);
}

}  // namespace

TEST_CASE("column map of the example grid") {
  auto g = grouped_grid();
  auto r = g.column_map().to_string();
  CHECK(r.size() == 14);
  CHECK(r.substr(0, 13) == "1111101011111");
  CHECK(g.map_columns(6, 6) == std::pair<std::size_t, std::size_t>{7, 8});
  CHECK(g.column_of(8) == 6);
  auto rep = g.report(6, 6, 7, 7);
  REQUIRE(rep.size() == 1);
  CHECK(kRootNames[rep[0].label] == "abra");
  auto e = g.map_columns(4, 3);
  CHECK(e.first == e.second + 1);
}

TEST_CASE("range counting on the example wavelet tree") {
  auto g = root_grid();
  CHECK(g.count(3, 6, 2, 6) == 4);
  CHECK(g.sum(3, 6, 2, 6) == 4);
  auto d = g.decompose(3, 6, 2, 6);
  REQUIRE(d.size() == 2);
  CHECK(g.node_lo(d[0].node) == 2);
  CHECK(g.node_hi(d[0].node) == 3);
  CHECK(d[0].i == 2);
  CHECK(d[0].j == 2);
  CHECK(g.node_lo(d[1].node) == 4);
  CHECK(g.node_hi(d[1].node) == 5);
  CHECK(d[1].i == 2);
  CHECK(d[1].j == 4);
  auto full = g.decompose(1, 13, 1, 7);
  REQUIRE(full.size() == 1);
  CHECK(full[0] == NodeRange{g.root(), 1, 13});
  CHECK(g.count(1, 13, 8, 7) == 0);
  CHECK(g.count(9, 13, 2, 7) == 0);
}

TEST_CASE("tracking the example node down and up") {
  auto g = root_grid();
  NodeId v = g.find_node(1, 3);
  CHECK(g.node_size(v) == 7);
  std::vector<std::string> names;
  for (auto l : g.node_labels(v)) names.push_back(kRootNames[l]);
  CHECK(names == std::vector<std::string>{"ab", "S1", "ca", "da", "ka", "la", "ra"});
  CHECK(kRootNames[g.track_down(v, 3).label] == "ca");
  CHECK(g.track_up(v, 3) == 9);
  for (std::size_t k = 1; k <= 13; ++k) CHECK(g.track_up(g.root(), k) == k);
}

TEST_CASE("a single point") {
  Grid g({{1, 1, 42, 5}}, 1, 1);
  CHECK(g.column_map().to_string() == "11");
  CHECK(g.num_nodes() == 1);
  CHECK(g.is_leaf(g.root()));
  CHECK(g.report(1, 1, 1, 1) == std::vector<Point>{{1, 1, 42, 5}});
  CHECK(g.sum(1, 1, 1, 1) == 5);
}

TEST_CASE("empty grid") {
  Grid g({}, 0, 0);
  CHECK(g.num_points() == 0);
  CHECK(g.num_nodes() == 0);
  CHECK(g.count(1, 0, 1, 0) == 0);
}

TEST_CASE("invalid point sets are rejected") {
  CHECK_THROWS_AS(Grid({{2, 1, 0, 0}, {1, 1, 0, 0}}, 2, 1), BuildError);
  CHECK_THROWS_AS(Grid({{1, 3, 0, 0}}, 1, 2), BuildError);
  CHECK_THROWS_AS(Grid({{1, 1, 0, 0}, {3, 1, 0, 0}}, 3, 1), BuildError);
  CHECK_THROWS_AS(Grid({{1, 1, 0, 0}}, 1, 1, {0.0, 0}), BuildError);
  auto g = root_grid();
  CHECK_THROWS_AS(g.count(0, 3, 1, 1), RangeError);
  CHECK_THROWS_AS(g.count(1, 14, 1, 1), RangeError);
  CHECK_THROWS_AS(g.track_down(g.root(), 14), RangeError);
  CHECK_THROWS_AS(g.track_up(g.root(), 0), RangeError);
}

TEST_CASE("random grids agree with scans") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 60; ++rep) {
    std::uint64_t cols = 1 + rng() % 12, rows = 1 + rng() % 9;
    auto pts = random_points(rng, cols, rows, rng() % 30, 100);
    double eps = std::array<double, 3>{0.25, 0.5, 1.0}[rep % 3];
    unsigned tau = std::array<unsigned, 3>{0, 1, 3}[(rep / 3) % 3];
    Grid g(pts, cols, rows, {eps, tau});

    // Leaf traversal reproduces the point multiset.
    std::vector<Point> rebuilt;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (!g.is_leaf(v)) continue;
      for (std::size_t k = 1; k <= g.node_size(v); ++k) {
        std::size_t rp = g.track_up(v, k);
        REQUIRE(g.track_down(g.root(), rp).leaf == v);
        REQUIRE(g.track_down(g.root(), rp).pos == k);
        rebuilt.push_back({g.column_of(rp), g.node_lo(v), g.leaf_label(v, k), g.root_weight(rp)});
      }
    }
    std::sort(rebuilt.begin(), rebuilt.end(), by_label);
    REQUIRE(rebuilt == pts);

    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (std::size_t k = 1; k <= g.node_size(v); ++k) {
        TrackStats st;
        REQUIRE(g.track_up(v, k, &st) == g.track_up_slow(v, k));
        REQUIRE(st.hops <= g.track_up_bound());
        REQUIRE(static_cast<double>(st.hops) <= (1.0 / eps) * std::pow(static_cast<double>(g.num_points()), eps) + 4);
      }
    }

    for (std::uint64_t x1 = 1; x1 <= cols; ++x1) {
      for (std::uint64_t x2 = x1; x2 <= cols; ++x2) {
        auto [i, j] = g.map_columns(x1, x2);
        for (std::size_t k = i; k <= j; ++k) REQUIRE((g.column_of(k) >= x1 && g.column_of(k) <= x2));
        REQUIRE(j - i + 1 == scan(pts, x1, x2, 1, rows).size());
        for (std::uint64_t y1 = 1; y1 <= rows; ++y1) {
          for (std::uint64_t y2 = y1; y2 <= rows; ++y2) {
            auto truth = scan(pts, x1, x2, y1, y2);
            auto d = g.decompose(x1, x2, y1, y2);
            REQUIRE(d.size() <= decompose_bound(rows));
            std::size_t total = 0;
            for (const auto& nr : d) {
              REQUIRE(nr.i >= 1);
              REQUIRE(nr.i <= nr.j);
              REQUIRE(g.node_lo(nr.node) >= y1);
              REQUIRE(g.node_hi(nr.node) <= y2);
              total += nr.size();
            }
            REQUIRE(total == truth.size());
            REQUIRE(g.count(x1, x2, y1, y2) == truth.size());
            auto rep_pts = g.report(x1, x2, y1, y2);
            std::sort(rep_pts.begin(), rep_pts.end(), by_label);
            REQUIRE(rep_pts == truth);
            std::uint64_t s = 0;
            for (const auto& p : truth) s += p.weight;
            REQUIRE(g.sum(x1, x2, y1, y2) == s);
          }
        }
      }
    }
  }
}

TEST_CASE("sampling step does not change sums") {
  std::mt19937_64 rng(42);
  auto pts = random_points(rng, 40, 16, 24, 100);
  Grid a(pts, 40, 16, {0.5, 1}), b(pts, 40, 16, {0.5, 0}), c(pts, 40, 16, {0.5, 16});
  CHECK(b.tau() == 6);
  for (int t = 0; t < 500; ++t) {
    std::uint64_t x1 = 1 + rng() % 40, x2 = x1 + rng() % (41 - x1);
    std::uint64_t y1 = 1 + rng() % 16, y2 = y1 + rng() % (17 - y1);
    auto s = a.sum(x1, x2, y1, y2);
    REQUIRE(s == b.sum(x1, x2, y1, y2));
    REQUIRE(s == c.sum(x1, x2, y1, y2));
  }
}

TEST_CASE("grid serialization round-trips") {
  std::mt19937_64 rng(43);
  auto pts = random_points(rng, 20, 9, 15, 1000);
  Grid g(pts, 20, 9, {0.25, 2});
  io::Writer w;
  g.serialize(w);
  io::Reader r(w.data());
  auto h = Grid::deserialize(r);
  CHECK(r.at_end());
  CHECK(h.tau() == 2);
  CHECK(h.epsilon() == 0.25);
  CHECK(h.space().total() == g.space().total());
  for (std::uint64_t x1 = 1; x1 <= 20; ++x1)
    for (std::uint64_t y1 = 1; y1 <= 9; ++y1) {
      REQUIRE(h.report(x1, 20, y1, 9) == g.report(x1, 20, y1, 9));
      REQUIRE(h.sum(1, x1, 1, y1) == g.sum(1, x1, 1, y1));
    }
  auto bytes = w.data();
  bytes[bytes.size() / 2] ^= 0x40;
  io::Reader bad(bytes);
  bool failed = false;
  try {
    auto k = Grid::deserialize(bad);
    failed = k.report(1, 20, 1, 9) != g.report(1, 20, 1, 9) || k.sum(1, 20, 1, 9) != g.sum(1, 20, 1, 9);
  } catch (const Error&) {
    failed = true;
  }
  CHECK(failed);
}
