#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "gdl/collection/collection.hpp"
#include "gdl/collection/oracles.hpp"
#include "gdl/collection/version_tree.hpp"
#include "gdl/error.hpp"
#include "grammar_helpers.hpp"

using namespace gdl;
using namespace gdl::collection;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("gdl_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::size_t hamming(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace

TEST_CASE("generation is deterministic and replayable") {
  for (auto model : {EditModel::Single, EditModel::Range, EditModel::Subtree}) {
    GenParams p{7, 100, 10, 20, 4, model};
    auto a = generate(p);
    auto b = generate(p);
    CHECK(a.docs == b.docs);
    CHECK(*a.script == *b.script);
    CHECK(a.base.size() == 100);
    CHECK(a.docs.size() == 10);
    CHECK(a.script->edits.size() == 20);
    CHECK(replay_naive(*a.script, a.base) == a.docs);
    CHECK(a.sigma() <= 4);
    for (std::size_t k = 1; k < a.script->edits.size(); ++k)
      CHECK(a.script->edits[k - 1].first <= a.script->edits[k].first);
  }
  auto c = generate({8, 100, 10, 20, 4, EditModel::Range});
  CHECK(c.docs != generate({7, 100, 10, 20, 4, EditModel::Range}).docs);
}

TEST_CASE("tiny bases under many edits keep documents nonempty") {
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    GenParams p;
    p.seed = seed;
    p.n = 1 + seed % 3;
    p.docs = 1 + static_cast<std::uint32_t>(seed % 12);
    p.edits = 40;
    p.sigma = 2;
    p.model = static_cast<EditModel>(seed % 3);
    auto c = generate(p);
    REQUIRE(c.script->edits.size() == 40);
    for (const auto& d : c.docs) REQUIRE_FALSE(d.empty());
    REQUIRE(replay_naive(*c.script, c.base) == c.docs);
  }
}

TEST_CASE("no edits gives identical documents") {
  auto c = generate({3, 50, 5, 0, 4, EditModel::Range});
  for (const auto& d : c.docs) CHECK(d == c.base);
}

TEST_CASE("a single substitution in document 2 of 3") {
  grammar::EditScript s;
  s.documents = 3;
  s.edits.push_back({grammar::EditKind::Substitute, 4, 'z', 2, 2});
  auto docs = replay_naive(s, "abcdefg");
  CHECK(hamming(docs[0], docs[1]) == 1);
  CHECK(docs[0] == docs[2]);
}

TEST_CASE("model targets have the expected shape") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    auto p = gdl::testing::random_params(rng, 50, 12, 20, 4);
    auto c = generate(p);
    for (const auto& e : c.script->edits) {
      CHECK(e.first >= 1);
      CHECK(e.first <= e.last);
      CHECK(e.last <= p.docs);
      if (p.model == EditModel::Single) {
        CHECK(e.first == e.last);
        if (p.docs > 1) CHECK(e.first >= 2);
      }
    }
  }
}

TEST_CASE("version tree preorder makes subtrees contiguous") {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 30; ++rep) {
    auto t = VersionTree::random(rng, 1 + static_cast<std::uint32_t>(rng() % 20));
    std::set<std::uint32_t> docs;
    for (std::uint32_t v = 0; v < t.size(); ++v) docs.insert(t.document(v));
    CHECK(docs.size() == t.size());
    CHECK(*docs.begin() == 1);
    for (std::uint32_t v = 0; v < t.size(); ++v) {
      std::set<std::uint32_t> in;
      for (std::uint32_t u = 0; u < t.size(); ++u) {
        std::uint32_t x = u;
        while (x != v && x != 0) x = t.parent(x);
        if (x == v) in.insert(t.document(u));
      }
      auto [lo, hi] = t.subtree_range(v);
      CHECK(in.size() == hi - lo + 1);
      CHECK(*in.begin() == lo);
      CHECK(*in.rbegin() == hi);
    }
  }
}

TEST_CASE("a path-shaped version tree numbers documents in order") {
  auto t = VersionTree::path(6);
  for (std::uint32_t v = 0; v < 6; ++v) {
    CHECK(t.document(v) == v + 1);
    CHECK(t.subtree_range(v) == std::pair<std::uint32_t, std::uint32_t>{v + 1, 6});
  }
}

TEST_CASE("generator parameter domain") {
  CHECK_THROWS_AS(generate({1, 0, 3, 1, 4, EditModel::Range}), DomainError);
  CHECK_THROWS_AS(generate({1, 5, 0, 1, 4, EditModel::Range}), DomainError);
  CHECK_THROWS_AS(generate({1, 5, 3, 1, 1, EditModel::Range}), DomainError);
  CHECK_THROWS_AS(parse_model("tree"), DomainError);
  CHECK(parse_model("subtree") == EditModel::Subtree);
}

TEST_CASE("ingest reads one document per file in path order") {
  auto dir = scratch_dir("ingest");
  write_file(dir / "c.txt", gdl::testing::kExampleDocs[2]);
  write_file(dir / "a.txt", gdl::testing::kExampleDocs[0]);
  write_file(dir / "b.txt", gdl::testing::kExampleDocs[1]);
  auto c = ingest({dir / "c.txt", dir / "a.txt", dir / "b.txt"});
  CHECK(c.num_docs() == 3);
  CHECK(c.docs == gdl::testing::kExampleDocs);
  CHECK(c.provenance == "ingested");

  std::string all;
  for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
  write_file(dir / "bin", all);
  CHECK(ingest({dir / "bin"}).docs[0] == all);
  CHECK(ingest({dir / "bin"}).sigma() == 256);

  write_file(dir / "empty", "");
  CHECK_THROWS_AS(ingest({dir / "empty"}), BuildError);
  CHECK_THROWS_AS(ingest({dir / "missing"}), IoError);
  CHECK_THROWS_AS(ingest({}), BuildError);
  fs::remove_all(dir);
}

TEST_CASE("collection file escapes every byte") {
  std::string all;
  for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
  std::vector<std::string> docs = {all, "plain", "back\\slash"};
  auto text = write_col(docs);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(read_col(text) == docs);
  CHECK(unescape_bytes("a\\x41\\n") == "aA\n");
  CHECK_THROWS_AS(unescape_bytes("\\q"), DomainError);
  CHECK_THROWS_AS(unescape_bytes("\\x4"), DomainError);
  CHECK_THROWS_AS(unescape_bytes("x\\"), DomainError);
}

TEST_CASE("naive oracles on the three-document example") {
  Collection c;
  c.docs = gdl::testing::kExampleDocs;
  CHECK(naive_list(c, "bra") == std::vector<std::uint32_t>{1, 2});
  CHECK(naive_count(c, "bra") == 2);
  auto occ = naive_occurrences(c, "bra");
  REQUIRE(occ.size() == 2);
  CHECK(occ[0] == Occurrence{1, 2, 2});
  CHECK(occ[1] == Occurrence{2, 2, 10});
  CHECK(naive_count(c, "a") == 12);
  CHECK(naive_list(c, "z").empty());
  CHECK(naive_count(c, "z") == 0);
  Collection aaa;
  aaa.docs = {"aaa"};
  CHECK(naive_count(aaa, "aa") == 2);
}

TEST_CASE("the two naive scans agree") {
  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 100; ++rep) {
    auto c = generate(gdl::testing::random_params(rng, 60, 6, 10, 3));
    for (int k = 0; k < 20; ++k) {
      std::string p;
      std::size_t m = 1 + rng() % 4;
      for (std::size_t i = 0; i < m; ++i) p.push_back(alphabet_symbol(static_cast<unsigned>(rng() % 3)));
      REQUIRE(naive_occurrences(c, p) == naive_occurrences_bytewise(c, p));
    }
  }
}
