#include "gdl/grammar/grammar.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <utility>

#include "gdl/error.hpp"

namespace gdl::grammar {

namespace {

constexpr std::uint32_t kTag = io::make_tag("GRAM");

std::vector<RuleId> topo_sort(const std::vector<Rule>& rules) {
  std::size_t r = rules.size();
  std::vector<std::uint32_t> deg(r, 0);
  std::vector<std::vector<RuleId>> parents(r);
  for (RuleId a = 0; a < r; ++a) {
    const auto& x = rules[a];
    if (x.terminal) continue;
    if (x.left >= r || x.right >= r) throw GrammarError("rule references an unknown nonterminal");
    deg[a] = 2;
    parents[x.left].push_back(a);
    parents[x.right].push_back(a);
  }
  std::vector<RuleId> order;
  order.reserve(r);
  for (RuleId a = 0; a < r; ++a)
    if (deg[a] == 0) order.push_back(a);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (RuleId p : parents[order[k]])
      if (--deg[p] == 0) order.push_back(p);
  if (order.size() != r) throw GrammarError("grammar has a cycle");
  return order;
}

}  // namespace

Grammar::Grammar(std::vector<Rule> rules, std::vector<RuleId> starts, unsigned ms_len)
    : rules_(std::move(rules)), starts_(std::move(starts)), ms_len_(ms_len) {
  if (ms_len_ == 0) throw GrammarError("metasymbol length must be at least 1");
  topo_ = topo_sort(rules_);
  len_.assign(rules_.size(), 0);
  height_.assign(rules_.size(), 0);
  for (RuleId a : topo_) {
    const auto& x = rules_[a];
    if (x.terminal) {
      len_[a] = x.symbols.size();
      height_[a] = 1;
    } else {
      len_[a] = len_[x.left] + len_[x.right];
      height_[a] = 1 + std::max(height_[x.left], height_[x.right]);
    }
  }
  for (RuleId s : starts_) {
    if (s >= rules_.size()) throw GrammarError("start symbol references an unknown nonterminal");
    total_ += len_[s];
  }
}

RuleId Grammar::start(std::size_t doc) const {
  if (doc < 1 || doc > starts_.size()) throw RangeError("document id out of range");
  return starts_[doc - 1];
}

void Grammar::append(RuleId a, std::uint64_t i, std::uint64_t j, std::string& out) const {
  const auto& x = rules_[a];
  if (x.terminal) {
    out.append(x.symbols, i - 1, j - i + 1);
    return;
  }
  std::uint64_t l = len_[x.left];
  if (i <= l) append(x.left, i, std::min(j, l), out);
  if (j > l) append(x.right, std::max(i, l + 1) - l, j - l, out);
}

std::string Grammar::extract(RuleId a, std::uint64_t i, std::uint64_t j) const {
  if (a >= rules_.size()) throw RangeError("unknown nonterminal");
  if (i < 1 || i > j || j > len_[a]) throw RangeError("extract range out of bounds");
  std::string out;
  out.reserve(j - i + 1);
  append(a, i, j, out);
  return out;
}

std::string Grammar::extract_prefix(RuleId a, std::uint64_t len) const {
  if (len == 0) throw RangeError("prefix length must be positive");
  std::string out;
  out.reserve(len);
  for (ForwardCursor c(*this, a); out.size() < len; c.next()) {
    if (c.done()) throw RangeError("prefix longer than expansion");
    out.push_back(c.get());
  }
  return out;
}

std::string Grammar::extract_suffix(RuleId a, std::uint64_t len) const {
  if (len == 0) throw RangeError("suffix length must be positive");
  std::string out;
  out.reserve(len);
  for (BackwardCursor c(*this, a); out.size() < len; c.next()) {
    if (c.done()) throw RangeError("suffix longer than expansion");
    out.push_back(c.get());
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Grammar::expand(RuleId a) const {
  if (a >= rules_.size()) throw RangeError("unknown nonterminal");
  std::string out;
  if (len_[a] > 0) append(a, 1, len_[a], out);
  return out;
}

char Grammar::symbol_at(RuleId a, std::uint64_t i) const {
  if (a >= rules_.size()) throw RangeError("unknown nonterminal");
  if (i < 1 || i > len_[a]) throw RangeError("symbol position out of bounds");
  while (!rules_[a].terminal) {
    const auto& x = rules_[a];
    if (i <= len_[x.left]) {
      a = x.left;
    } else {
      i -= len_[x.left];
      a = x.right;
    }
  }
  return rules_[a].symbols[i - 1];
}

void Grammar::validate() const {
  std::set<std::pair<RuleId, RuleId>> pairs;
  std::set<std::string> leaves;
  for (RuleId a = 0; a < rules_.size(); ++a) {
    const auto& x = rules_[a];
    if (x.terminal) {
      if (x.symbols.size() > ms_len_) throw GrammarError("metasymbol longer than the configured length");
      if (!leaves.insert(x.symbols).second) throw GrammarError("duplicate terminal rule");
    } else {
      if (!x.symbols.empty()) throw GrammarError("binary rule carries symbols");
      if (len_[a] != len_[x.left] + len_[x.right]) throw GrammarError("expansion length mismatch");
      if (!pairs.emplace(x.left, x.right).second) throw GrammarError("duplicate binary rule");
    }
  }
}

std::uint64_t Grammar::size_in_bits() const {
  std::uint64_t w = std::max<std::uint64_t>(1, std::bit_width(rules_.size()));
  std::uint64_t bits = starts_.size() * w;
  for (const auto& x : rules_) bits += 1 + (x.terminal ? 8 * x.symbols.size() + 8 : 2 * w);
  return bits;
}

void Grammar::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u32(ms_len_);
    w.u64(rules_.size());
    for (const auto& x : rules_) {
      w.u8(x.terminal ? 1 : 0);
      if (x.terminal) {
        w.varint(x.symbols.size());
        w.bytes(x.symbols);
      } else {
        w.varint(x.left);
        w.varint(x.right);
      }
    }
    w.u64(starts_.size());
    for (RuleId s : starts_) w.varint(s);
  });
}

Grammar Grammar::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  unsigned ms = r.u32();
  std::uint64_t n = r.u64();
  if (n > r.remaining()) throw FormatError("rule count exceeds data");
  std::vector<Rule> rules;
  rules.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    auto kind = r.u8();
    if (kind == 1) {
      auto len = r.varint();
      rules.push_back(Rule::leaf(std::string(r.bytes(len))));
    } else if (kind == 0) {
      auto a = r.varint();
      auto b = r.varint();
      if (a >= n || b >= n) throw FormatError("rule reference out of range");
      rules.push_back(Rule::binary(static_cast<RuleId>(a), static_cast<RuleId>(b)));
    } else {
      throw FormatError("unknown rule kind");
    }
  }
  std::uint64_t d = r.u64();
  if (d > r.remaining()) throw FormatError("document count exceeds data");
  std::vector<RuleId> starts;
  for (std::uint64_t k = 0; k < d; ++k) {
    auto s = r.varint();
    if (s >= n) throw FormatError("start reference out of range");
    starts.push_back(static_cast<RuleId>(s));
  }
  r.expect_end();
  try {
    Grammar g(std::move(rules), std::move(starts), ms);
    g.validate();
    return g;
  } catch (const GrammarError& e) {
    throw FormatError(std::string("invalid grammar: ") + e.what());
  }
}

ForwardCursor::ForwardCursor(const Grammar& g, RuleId a) : g_(&g) {
  if (a >= g.num_rules()) throw RangeError("unknown nonterminal");
  stack_.push_back(a);
  advance_leaf();
}

void ForwardCursor::advance_leaf() {
  leaf_ = nullptr;
  while (!stack_.empty()) {
    RuleId a = stack_.back();
    stack_.pop_back();
    while (!g_->is_terminal(a)) {
      stack_.push_back(g_->rule(a).right);
      a = g_->rule(a).left;
    }
    const auto& s = g_->rule(a).symbols;
    if (!s.empty()) {
      leaf_ = &s;
      pos_ = 0;
      return;
    }
  }
}

void ForwardCursor::next() {
  if (++pos_ == leaf_->size()) advance_leaf();
}

BackwardCursor::BackwardCursor(const Grammar& g, RuleId a) : g_(&g) {
  if (a >= g.num_rules()) throw RangeError("unknown nonterminal");
  stack_.push_back(a);
  advance_leaf();
}

void BackwardCursor::advance_leaf() {
  leaf_ = nullptr;
  while (!stack_.empty()) {
    RuleId a = stack_.back();
    stack_.pop_back();
    while (!g_->is_terminal(a)) {
      stack_.push_back(g_->rule(a).left);
      a = g_->rule(a).right;
    }
    const auto& s = g_->rule(a).symbols;
    if (!s.empty()) {
      leaf_ = &s;
      pos_ = s.size();
      return;
    }
  }
}

void BackwardCursor::next() {
  if (--pos_ == 0) advance_leaf();
}

std::vector<std::uint64_t> occ_counts(const std::vector<Rule>& rules, const std::vector<RuleId>& starts) {
  auto order = topo_sort(rules);
  std::vector<std::uint64_t> count(rules.size(), 0);
  for (RuleId s : starts) {
    if (s >= rules.size()) throw GrammarError("start symbol references an unknown nonterminal");
    ++count[s];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& x = rules[*it];
    if (x.terminal) continue;
    count[x.left] += count[*it];
    count[x.right] += count[*it];
  }
  return count;
}

std::vector<std::uint64_t> occ_counts(const Grammar& g) { return occ_counts(g.rules(), g.starts()); }

}  // namespace gdl::grammar
