#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "gdl/collection/oracles.hpp"
#include "gdl/doclist/doc_index.hpp"
#include "gdl/doclist/leftist.hpp"
#include "gdl/error.hpp"
#include "gdl/grammar/builders.hpp"
#include "gdl/succinct/distinct.hpp"
#include "grammar_helpers.hpp"

using namespace gdl;
using namespace gdl::doclist;
using gdl::testing::kExampleE;
using gdl::testing::kExampleL;
using gdl::testing::rule_by_expansion;
using succinct::BitVector;

namespace {

std::shared_ptr<const DocIndex> make_index(const grammar::Grammar& g, ListLayout layout = ListLayout::Leaf,
                                           grid::GridOptions opt = {}) {
  auto gp = std::make_shared<const grammar::Grammar>(g);
  auto pi = std::make_shared<const index::PatternIndex>(gp, opt);
  return std::make_shared<const DocIndex>(pi, layout);
}

std::shared_ptr<const DocIndex> example_index(ListLayout layout = ListLayout::Leaf) {
  return make_index(grammar::build_repetitive(gdl::testing::example_script(), "abracada"), layout);
}

std::size_t count_runs(const std::vector<std::int64_t>& e) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < e.size(); ++k) r += (k == 0 || e[k] < e[k - 1]) ? 1 : 0;
  return r;
}

std::vector<BitVector> all_marks(std::uint32_t d) {
  std::vector<BitVector> out;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    BitVector v(d);
    for (std::uint32_t k = 0; k < d; ++k)
      if (mask >> k & 1) v.set(k + 1, true);
    out.push_back(v);
  }
  return out;
}

std::set<std::uint64_t> marked(const BitVector& v) {
  std::set<std::uint64_t> s;
  for (std::size_t k = 1; k <= v.size(); ++k)
    if (v.get(k)) s.insert(k);
  return s;
}

std::string substring_pattern(std::mt19937_64& rng, const std::vector<std::string>& docs, std::size_t max_m) {
  const auto& d = docs[rng() % docs.size()];
  std::size_t m = std::min<std::size_t>(1 + rng() % max_m, d.size());
  return d.substr(rng() % (d.size() - m + 1), m);
}

}  // namespace

TEST_CASE("inverted lists of the example collection") {
  auto dix = example_index();
  const auto& g = dix->pattern_index().grammar();
  auto abra = rule_by_expansion(g, "abra");
  CHECK(dix->lists().ranges(abra) == std::vector<DocRange>{{1, 2}});
  auto third = g.start(3);
  CHECK(dix->lists().ranges(third) == std::vector<DocRange>{{3, 3}});
  CHECK(dix->lists().decode(rule_by_expansion(g, "ab")) == std::vector<std::uint32_t>{1, 2, 3});
}

TEST_CASE("example listing") {
  for (auto layout : {ListLayout::Leaf, ListLayout::Root}) {
    auto dix = example_index(layout);
    CHECK(dix->list_documents("bra") == std::vector<std::uint32_t>{1, 2});
    CHECK(dix->list_documents("a") == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(dix->list_documents("kada") == std::vector<std::uint32_t>{2, 3});
    CHECK(dix->list_documents("bla") == std::vector<std::uint32_t>{3});
    CHECK(dix->list_documents("zz").empty());
    CHECK(dix->list_documents("abrz").empty());
    CHECK_THROWS_AS(dix->list_documents(""), DomainError);
  }
}

TEST_CASE("example node holds the example array") {
  auto dix = example_index();
  const auto& grid = dix->pattern_index().grid();
  auto v = grid.find_node(1, 3);
  CHECK(dix->materialize(v) == kExampleL);
  CHECK(dix->node_runs(v) == 3);
  CHECK(dix->node_starts(v).positions() == std::vector<std::uint64_t>{1, 4, 5, 6, 9, 11, 12});
  auto [lo, hi] = dix->list_interval(v, 3, 7);
  CHECK(lo == 5);
  CHECK(hi == 13);
  std::vector<std::uint64_t> slice(kExampleL.begin() + 4, kExampleL.end());
  CHECK(slice == std::vector<std::uint64_t>{1, 1, 2, 3, 2, 3, 3, 1, 2});

  BitVector marks(3);
  ListingStats st;
  auto got = dix->range_distinct({v, 3, 7}, marks, &st);
  CHECK(got == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(marks.count_ones() == 3);
  CHECK(st.rmq_calls >= 1);
}

TEST_CASE("leftist listing on the example array") {
  succinct::BaseRMQ q(kExampleE);
  BitVector v(3);
  auto r = leftist_distinct(kExampleL, q, 3, 5, 13, v);
  CHECK(r.values == std::vector<std::uint64_t>{1, 2, 3});
  std::set<std::size_t> pos(r.positions.begin(), r.positions.end());
  CHECK(pos == std::set<std::size_t>{5, 7, 8});
  CHECK(v.count_ones() == 0);

  std::vector<std::uint64_t> same(9, 2);
  succinct::BaseRMQ qs(succinct::previous_occurrence(same));
  auto one = leftist_distinct(same, qs, 3, 1, 9, v);
  CHECK(one.values == std::vector<std::uint64_t>{2});
}

TEST_CASE("leftist and run-head listing agree with a scan on all short arrays") {
  for (std::size_t t = 1; t <= 7; ++t) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < t; ++k) total *= 4;
    std::vector<std::uint64_t> l(t);
    BitVector v(4);
    auto priors = all_marks(4);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t k = 0; k < t; ++k, c /= 4) l[k] = 1 + c % 4;
      auto e = succinct::previous_occurrence(l);
      succinct::BaseRMQ q(e);
      succinct::RunLengthRMQ rq(e);
      for (std::size_t i = 1; i <= t; ++i) {
        for (std::size_t j = i; j <= t; ++j) {
          std::set<std::uint64_t> truth(l.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                        l.begin() + static_cast<std::ptrdiff_t>(j));
          auto r = leftist_distinct(l, q, 4, i, j, v);
          REQUIRE(std::set<std::uint64_t>(r.values.begin(), r.values.end()) == truth);
          REQUIRE(r.values.size() == truth.size());
          REQUIRE(r.rmq_calls <= 2 * truth.size() + 1);
          for (std::size_t k = 0; k < r.positions.size(); ++k)
            REQUIRE(e[r.positions[k] - 1] < static_cast<std::int64_t>(i));
          for (std::size_t pv = 0; pv < (t <= 5 ? priors.size() : 1); ++pv) {
            auto w = priors[pv];
            auto before = marked(w);
            auto a = actual_distinct(l, rq, 4, i, j, w);
            std::set<std::uint64_t> want;
            for (auto x : truth)
              if (!before.count(x)) want.insert(x);
            REQUIRE(std::set<std::uint64_t>(a.values.begin(), a.values.end()) == want);
            REQUIRE(a.values.size() == want.size());
            before.insert(truth.begin(), truth.end());
            REQUIRE(marked(w) == before);
          }
        }
      }
    }
  }
}

TEST_CASE("range listing equals a scan on every node range and prior mark state") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 25; ++it) {
    auto p = gdl::testing::random_params(rng, 30, 4, 6, 3);
    auto c = collection::generate(p);
    auto layout = it % 2 ? ListLayout::Root : ListLayout::Leaf;
    auto dix = make_index(grammar::build_repetitive(*c.script, c.base), layout);
    const auto& grid = dix->pattern_index().grid();
    auto priors = all_marks(dix->num_docs());
    for (grid::NodeId v = 0; v < grid.num_nodes() && grid.num_points() > 0; ++v) {
      auto l = dix->materialize(v);
      REQUIRE(l.size() == dix->node_length(v));
      REQUIRE(count_runs(succinct::previous_occurrence(l)) == dix->node_runs(v));
      for (std::size_t i = 1; i <= grid.node_size(v); ++i) {
        for (std::size_t j = i; j <= grid.node_size(v); ++j) {
          auto [lo, hi] = dix->list_interval(v, i, j);
          std::set<std::uint64_t> truth(l.begin() + static_cast<std::ptrdiff_t>(lo - 1),
                                        l.begin() + static_cast<std::ptrdiff_t>(hi));
          for (auto w : priors) {
            auto before = marked(w);
            ListingStats st;
            auto got = dix->range_distinct({v, i, j}, w, &st);
            std::set<std::uint64_t> want;
            for (auto x : truth)
              if (!before.count(x)) want.insert(x);
            REQUIRE(std::set<std::uint64_t>(got.begin(), got.end()) == want);
            REQUIRE(got.size() == want.size());
            if (before.empty()) REQUIRE(st.rmq_calls + st.lists_opened <= 5 * (truth.size() + 1));
          }
        }
      }
    }
  }
}

TEST_CASE("listing matches the naive scan") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 80; ++it) {
    auto p = gdl::testing::random_params(rng, 120, 10, 25, 4);
    auto c = collection::generate(p);
    unsigned ms = 1 + static_cast<unsigned>(rng() % 3);
    auto g = it % 3 == 0 ? grammar::build_generic(c.docs, ms) : grammar::build_repetitive(*c.script, c.base, ms);
    grid::GridOptions opt;
    opt.epsilon = it % 2 ? 0.25 : 1.0;
    auto dix = make_index(g, it % 2 ? ListLayout::Root : ListLayout::Leaf, opt);
    for (int q = 0; q < 30; ++q) {
      std::string pat = q % 5 == 0 ? std::string(1 + rng() % 3, collection::alphabet_symbol(rng() % p.sigma))
                                   : substring_pattern(rng, c.docs, 8);
      REQUIRE(dix->list_documents(pat) == collection::naive_list(c, pat));
    }
  }
}

TEST_CASE("pure copies give one run per node and full lists") {
  collection::GenParams p;
  p.seed = 5;
  p.n = 60;
  p.docs = 6;
  p.edits = 0;
  p.sigma = 4;
  auto c = collection::generate(p);
  auto dix = make_index(grammar::build_repetitive(*c.script, c.base));
  for (RuleId a = 0; a < dix->lists().num_lists(); ++a)
    CHECK(dix->lists().ranges(a) == std::vector<DocRange>{{1, 6}});
  auto st = dix->doc_stats();
  CHECK(st.level_runs == st.level_nodes);
}

TEST_CASE("reported runs equal a scan of the rebuilt arrays") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    auto c = collection::generate(gdl::testing::random_params(rng, 150, 10, 30, 4));
    auto dix = make_index(grammar::build_repetitive(*c.script, c.base));
    const auto& grid = dix->pattern_index().grid();
    auto st = dix->doc_stats();
    std::vector<std::size_t> levels(st.level_runs.size(), 0);
    for (grid::NodeId v = 0; v < grid.num_nodes(); ++v)
      levels[grid.depth(v)] += count_runs(succinct::previous_occurrence(dix->materialize(v)));
    CHECK(levels == st.level_runs);
    CHECK(st.total_bits() > 0);
  }
}

TEST_CASE("a trailing pure copy adds no runs") {
  std::mt19937_64 rng(24);
  for (int it = 0; it < 30; ++it) {
    auto p = gdl::testing::random_params(rng, 120, 8, 20, 4);
    auto c = collection::generate(p);
    auto script = *c.script;
    script.documents += 1;
    for (auto& e : script.edits)
      if (e.last == c.script->documents) e.last = script.documents;
    auto a = make_index(grammar::build_repetitive(*c.script, c.base));
    auto b = make_index(grammar::build_repetitive(script, c.base));
    const auto& ga = a->pattern_index().grid();
    REQUIRE(ga.num_nodes() == b->pattern_index().grid().num_nodes());
    for (grid::NodeId v = 0; v < ga.num_nodes(); ++v) CHECK(a->node_runs(v) == b->node_runs(v));
  }
}

TEST_CASE("short patterns inside metasymbols") {
  auto g = grammar::build_repetitive(gdl::testing::example_script(), "abracada", 3);
  auto dix = make_index(g);
  collection::Collection c;
  c.docs = gdl::testing::kExampleDocs;
  for (std::string p : {"a", "b", "ab", "ra", "ka", "la", "bla", "kad", "aca", "q"}) {
    CHECK(dix->list_documents(p) == collection::naive_list(c, p));
  }
  CHECK_FALSE(dix->short_answer("ab").empty());
  CHECK(dix->short_answer("abra").empty());
}

TEST_CASE("serialization round trip and corruption") {
  auto g = std::make_shared<const grammar::Grammar>(
      grammar::build_repetitive(gdl::testing::example_script(), "abracada", 2));
  auto pi = std::make_shared<const index::PatternIndex>(g);
  DocIndex dix(pi, ListLayout::Root);
  io::Writer w;
  dix.serialize(w);
  io::Reader r(w.data());
  auto back = DocIndex::deserialize(r, pi);
  CHECK(back->layout() == ListLayout::Root);
  CHECK(back->lists() == dix.lists());
  for (std::string p : {"a", "ab", "bra", "kada", "la", "zz"}) CHECK(back->list_documents(p) == dix.list_documents(p));
  auto bytes = w.data();
  io::Reader cut(std::string_view(bytes).substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(DocIndex::deserialize(cut, pi), FormatError);
  auto other = std::make_shared<const index::PatternIndex>(
      std::make_shared<const grammar::Grammar>(grammar::build_generic({"abc", "abd"})));
  io::Reader mismatch(bytes);
  CHECK_THROWS_AS(DocIndex::deserialize(mismatch, other), FormatError);
}

TEST_CASE("inverted list access") {
  InvertedLists lists({{{1, 3}, {5, 5}, {7, 9}}, {}}, 9);
  CHECK(lists.length(0) == 7);
  CHECK(lists.length(1) == 0);
  std::vector<std::uint32_t> got;
  for (std::size_t k = 1; k <= 7; ++k) got.push_back(lists.doc_at(0, k));
  CHECK(got == std::vector<std::uint32_t>{1, 2, 3, 5, 7, 8, 9});
  CHECK(lists.decode(0) == got);
  InvertedLists::Cursor cur(lists, 0, 3);
  std::vector<std::uint32_t> tail;
  for (; !cur.done(); cur.next()) tail.push_back(cur.get());
  CHECK(tail == std::vector<std::uint32_t>{3, 5, 7, 8, 9});
  CHECK(lists.contains(0, 5));
  CHECK_FALSE(lists.contains(0, 4));
  CHECK_THROWS_AS(lists.doc_at(0, 8), RangeError);
  CHECK_THROWS_AS(InvertedLists({{{1, 2}, {3, 4}}}, 4), BuildError);
  CHECK_THROWS_AS(InvertedLists({{{2, 1}}}, 4), BuildError);
}
