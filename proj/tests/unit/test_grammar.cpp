#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "gdl/collection/collection.hpp"
#include "gdl/error.hpp"
#include "gdl/grammar/builders.hpp"
#include "gdl/grammar/edit_script.hpp"
#include "gdl/grammar/grammar.hpp"
#include "grammar_helpers.hpp"

using namespace gdl;
using namespace gdl::grammar;
using gdl::testing::kExampleDocs;
using gdl::testing::rule_by_expansion;

namespace {

void check_structure(const Grammar& g, const std::vector<std::string>& docs) {
  REQUIRE(g.num_docs() == docs.size());
  std::uint64_t n = 0;
  for (std::size_t d = 1; d <= docs.size(); ++d) {
    REQUIRE(g.document(d) == docs[d - 1]);
    REQUIRE(g.extract(g.start(d), 1, g.doc_length(d)) == docs[d - 1]);
    n += g.doc_length(d);
  }
  REQUIRE(g.total_length() == n);
  g.validate();
  auto count = occ_counts(g);
  REQUIRE(count == gdl::testing::walk_counts(g));
  std::uint64_t weighted = 0;
  for (RuleId a = 0; a < g.num_rules(); ++a)
    if (g.is_terminal(a)) weighted += count[a] * g.exp_len(a);
  REQUIRE(weighted == n);
  for (RuleId a = 0; a < g.num_rules(); ++a) {
    REQUIRE(count[a] >= 1);
    if (!g.is_terminal(a)) {
      REQUIRE(g.exp_len(a) == g.exp_len(g.rule(a).left) + g.exp_len(g.rule(a).right));
      REQUIRE(g.rule(a).left < a);
      REQUIRE(g.rule(a).right < a);
    }
  }
}

}  // namespace

TEST_CASE("generic grammar of the three-document example") {
  auto g = build_generic(kExampleDocs);
  check_structure(g, kExampleDocs);
  CHECK(g.num_rules() == 20);
  CHECK(g.extract(g.start(1), 3, 5) == "rac");
  CHECK(g.extract_prefix(g.start(2), 4) == "abra");
  CHECK(g.extract_suffix(g.start(3), 4) == "kada");
  auto count = occ_counts(g);
  CHECK(count[rule_by_expansion(g, "abra")] == 2);
  CHECK(count[rule_by_expansion(g, "abla")] == 1);
  CHECK(count[rule_by_expansion(g, "da")] == 3);
  CHECK(count[rule_by_expansion(g, "a")] == 12);
  CHECK(g.height(g.start(1)) == 4);
}

TEST_CASE("edit-model grammar of the three-document example shares nodes") {
  auto g = build_repetitive(gdl::testing::example_script(), "abracada");
  check_structure(g, kExampleDocs);
  auto generic = build_generic(kExampleDocs);
  std::set<std::string> a, b;
  for (RuleId x = 0; x < g.num_rules(); ++x) a.insert(g.expand(x));
  for (RuleId x = 0; x < generic.num_rules(); ++x) b.insert(generic.expand(x));
  CHECK(a == b);
  CHECK(g.num_rules() == 20);
  const auto& s2 = g.rule(g.start(2));
  const auto& s1 = g.rule(g.start(1));
  CHECK(s1.left == s2.left);
}

TEST_CASE("single symbol document gives one rule") {
  auto g = build_generic({"x"});
  CHECK(g.num_rules() == 1);
  CHECK(g.is_terminal(g.start(1)));
  CHECK(g.document(1) == "x");
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(build_generic({"ab", ""}), BuildError);
  CHECK_THROWS_AS(build_generic({}), BuildError);
  CHECK_THROWS_AS(build_repetitive(EditScript{}, ""), BuildError);
}

TEST_CASE("generic builder never inflates and stays balanced") {
  std::mt19937_64 rng(21);
  std::vector<std::string> docs;
  std::uint64_t total = 0;
  for (int k = 0; k < 100; ++k) {
    std::string d;
    std::size_t len = 1 + rng() % 60;
    for (std::size_t i = 0; i < len; ++i) d.push_back(static_cast<char>('a' + rng() % 3));
    total += d.size();
    docs.push_back(d);
  }
  auto g = build_generic(docs);
  check_structure(g, docs);
  CHECK(g.num_rules() <= total);
  for (std::size_t d = 1; d <= docs.size(); ++d) {
    auto n = static_cast<double>(docs[d - 1].size());
    CHECK(g.height(g.start(d)) <= static_cast<std::uint32_t>(std::ceil(std::log2(n))) + 1);
  }
  for (unsigned chunk : {2u, 3u, 5u}) check_structure(build_generic(docs, chunk), docs);
}

TEST_CASE("pure copies share one tree") {
  EditScript s;
  s.documents = 3;
  auto g = build_repetitive(s, "abracadabra");
  auto single = build_generic({"abracadabra"});
  CHECK(g.start(1) == g.start(2));
  CHECK(g.start(2) == g.start(3));
  CHECK(g.num_rules() == single.num_rules());
}

TEST_CASE("edit-model grammars match naive replay") {
  std::mt19937_64 rng(22);
  double worst_size = 0, worst_height = 0;
  for (int rep = 0; rep < 300; ++rep) {
    auto p = gdl::testing::random_params(rng, 200, 10, 30, 4);
    auto c = collection::generate(p);
    unsigned ms = 1 + static_cast<unsigned>(rep % 3);
    auto g = build_repetitive(*c.script, c.base, ms);
    check_structure(g, c.docs);
    REQUIRE(collection::replay_naive(*c.script, c.base) == c.docs);
    double logn = std::max(1.0, std::log2(static_cast<double>(c.total_length())));
    if (ms == 1) {
      double ratio = static_cast<double>(g.num_rules()) / (static_cast<double>(p.n) + static_cast<double>(p.edits) * logn);
      worst_size = std::max(worst_size, ratio);
      CHECK(ratio <= 8.0);
    }
    for (std::size_t d = 1; d <= g.num_docs(); ++d) {
      double bound = std::log2(static_cast<double>(g.doc_length(d) + p.edits + 2));
      double h = g.height(g.start(d));
      worst_height = std::max(worst_height, (h - 3) / bound);
      REQUIRE(h <= 1.5 * bound + 3);
    }
  }
  MESSAGE("worst rules/(n+s log N) = " << worst_size << ", worst (height-3)/log2(n_d+s+2) = " << worst_height);
}

TEST_CASE("extraction agrees with full expansion") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 40; ++rep) {
    auto c = collection::generate(gdl::testing::random_params(rng, 80, 5, 15, 4));
    auto g = build_repetitive(*c.script, c.base, 1 + static_cast<unsigned>(rep % 3));
    for (RuleId a = 0; a < g.num_rules(); ++a) {
      auto s = g.expand(a);
      auto n = s.size();
      if (n == 0) {
        CHECK_THROWS_AS(g.extract_prefix(a, 1), RangeError);
        continue;
      }
      for (int t = 0; t < 5; ++t) {
        std::uint64_t i = 1 + rng() % n;
        std::uint64_t j = i + rng() % (n - i + 1);
        REQUIRE(g.extract(a, i, j) == s.substr(i - 1, j - i + 1));
        REQUIRE(g.symbol_at(a, i) == s[i - 1]);
        std::uint64_t l = 1 + rng() % n;
        REQUIRE(g.extract_prefix(a, l) == g.extract(a, 1, l));
        REQUIRE(g.extract_suffix(a, l) == g.extract(a, n - l + 1, n));
      }
      REQUIRE(g.extract_prefix(a, 1) == s.substr(0, 1));
      REQUIRE(g.extract_suffix(a, 1) == s.substr(n - 1));
      CHECK_THROWS_AS(g.extract(a, 1, n + 1), RangeError);
      CHECK_THROWS_AS(g.extract_prefix(a, n + 1), RangeError);
    }
  }
}

TEST_CASE("cursors walk expansions in both directions") {
  auto g = build_repetitive(gdl::testing::example_script(), "abracada", 3);
  for (RuleId a = 0; a < g.num_rules(); ++a) {
    std::string f, b;
    for (ForwardCursor c(g, a); !c.done(); c.next()) f.push_back(c.get());
    for (BackwardCursor c(g, a); !c.done(); c.next()) b.push_back(c.get());
    std::string rev(b.rbegin(), b.rend());
    CHECK(f == g.expand(a));
    CHECK(rev == g.expand(a));
  }
}

TEST_CASE("single-document chain has unit counts") {
  std::vector<Rule> rules = {Rule::leaf("a"), Rule::leaf("b"), Rule::binary(0, 1), Rule::binary(2, 1)};
  Grammar g(rules, {3});
  CHECK(g.document(1) == "abb");
  auto c = occ_counts(g);
  CHECK(c == std::vector<std::uint64_t>{1, 2, 1, 1});
}

TEST_CASE("malformed grammars are rejected") {
  std::vector<Rule> cyc = {Rule::leaf("a"), Rule::binary(0, 2), Rule::binary(1, 0)};
  CHECK_THROWS_AS(Grammar(cyc, {2}), GrammarError);
  CHECK_THROWS_AS(occ_counts(cyc, {2}), GrammarError);
  std::vector<Rule> dangling = {Rule::leaf("a"), Rule::binary(0, 7)};
  CHECK_THROWS_AS(Grammar(dangling, {1}), GrammarError);
  std::vector<Rule> dup = {Rule::leaf("a"), Rule::binary(0, 0), Rule::binary(0, 0)};
  CHECK_THROWS_AS(Grammar(dup, {2}).validate(), GrammarError);
  CHECK_THROWS_AS(Grammar(dup, {5}), GrammarError);
}

TEST_CASE("edit positions outside the document are script errors") {
  EditScript s;
  s.documents = 2;
  s.edits.push_back({EditKind::Substitute, 9, 'x', 2, 2});
  CHECK_THROWS_AS(build_repetitive(s, "abc"), ScriptError);
  s.edits[0] = {EditKind::Insert, 5, 'x', 2, 2};
  CHECK_THROWS_AS(build_repetitive(s, "abc"), ScriptError);
  s.edits[0] = {EditKind::Insert, 4, 'x', 2, 2};
  CHECK(build_repetitive(s, "abc").document(2) == "abcx");
  s.edits[0] = {EditKind::Delete, 4, 0, 2, 2};
  CHECK_THROWS_AS(build_repetitive(s, "abc"), ScriptError);
  s.edits[0] = {EditKind::Delete, 1, 0, 3, 3};
  CHECK_THROWS_AS(build_repetitive(s, "abc"), ScriptError);
}

TEST_CASE("undo restores the edited position unless it moved") {
  EditScript plain;
  plain.documents = 3;
  plain.edits.push_back({EditKind::Substitute, 2, 'x', 1, 2});
  CHECK(collection::replay_naive(plain, "abc") == std::vector<std::string>{"axc", "axc", "abc"});

  EditScript s;
  s.documents = 4;
  s.edits.push_back({EditKind::Substitute, 2, 'x', 1, 2});
  s.edits.push_back({EditKind::Insert, 1, 'y', 2, 2});
  s.edits.push_back({EditKind::Delete, 3, 0, 3, 3});
  // At document 3 the substitution's position holds 'a' (shifted by the
  // insertion), so its undo is skipped; the insertion and deletion undo.
  std::vector<std::string> expect = {"axc", "yaxc", "ax", "axc"};
  CHECK(collection::replay_naive(s, "abc") == expect);
  for (unsigned ms : {1u, 2u, 4u}) check_structure(build_repetitive(s, "abc", ms), expect);
}

TEST_CASE("empty metasymbols survive deletions") {
  EditScript s;
  s.documents = 2;
  s.edits.push_back({EditKind::Delete, 3, 0, 2, 2});
  s.edits.push_back({EditKind::Delete, 3, 0, 2, 2});
  auto g = build_repetitive(s, "abcdef", 2);
  CHECK(g.document(2) == "abef");
  bool has_empty = false;
  for (RuleId a = 0; a < g.num_rules(); ++a) has_empty |= g.is_terminal(a) && g.exp_len(a) == 0;
  CHECK(has_empty);
  check_structure(g, {"abcdef", "abef"});
}

TEST_CASE("grammar serialization round-trips") {
  auto g = build_repetitive(gdl::testing::example_script(), "abracada", 2);
  io::Writer w;
  g.serialize(w);
  io::Reader r(w.data());
  auto h = Grammar::deserialize(r);
  CHECK(r.at_end());
  CHECK(h.num_rules() == g.num_rules());
  CHECK(h.ms_len() == 2);
  for (std::size_t d = 1; d <= 3; ++d) CHECK(h.document(d) == g.document(d));
  auto bytes = w.data();
  bytes.resize(bytes.size() - 1);
  io::Reader bad(bytes);
  CHECK_THROWS_AS(Grammar::deserialize(bad), FormatError);
}

TEST_CASE("script text format round-trips") {
  auto s = gdl::testing::example_script();
  s.edits.push_back({EditKind::Delete, 2, 0, 1, 3});
  s.edits.push_back({EditKind::Insert, 1, static_cast<char>(200), 2, 2});
  auto text = format_script(s);
  CHECK(text.rfind("documents 3\nedits 4\nsub 5 107 2 3\n", 0) == 0);
  CHECK(parse_script(text) == s);
  CHECK_THROWS_AS(parse_script("documents 2\nedits 1\nmov 1 1 1 1\n"), ScriptError);
  CHECK_THROWS_AS(parse_script("documents 2\nedits 1\nsub 1 97 1 3\n"), ScriptError);
  CHECK_THROWS_AS(parse_script("documents 2\nedits 2\nsub 1 97 1 1\n"), ScriptError);
  CHECK_THROWS_AS(parse_script("edits 0\n"), ScriptError);
}
