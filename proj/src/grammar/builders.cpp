#include "gdl/grammar/builders.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "gdl/error.hpp"

namespace gdl::grammar {

namespace {

struct PairHash {
  std::size_t operator()(std::uint64_t k) const { return std::hash<std::uint64_t>{}(k * 0x9e3779b97f4a7c15ULL); }
};

// Hash-consed rule store. Ids grow in creation order, so children always
// precede their parents.
class RulePool {
 public:
  RuleId leaf(const std::string& s) {
    auto it = leaves_.find(s);
    if (it != leaves_.end()) return it->second;
    RuleId id = push(Rule::leaf(s), s.size(), 1);
    leaves_.emplace(s, id);
    return id;
  }

  RuleId node(RuleId l, RuleId r) {
    std::uint64_t key = (static_cast<std::uint64_t>(l) << 32) | r;
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return it->second;
    RuleId id = push(Rule::binary(l, r), len_[l] + len_[r], 1 + std::max(height_[l], height_[r]));
    pairs_.emplace(key, id);
    return id;
  }

  const Rule& rule(RuleId a) const { return rules_[a]; }
  std::uint64_t len(RuleId a) const { return len_[a]; }
  std::uint32_t height(RuleId a) const { return height_[a]; }

  // Drops rules unreachable from the starts and renumbers, keeping order.
  Grammar finish(std::vector<RuleId> starts, unsigned ms_len) {
    std::vector<bool> live(rules_.size(), false);
    for (RuleId s : starts) live[s] = true;
    for (std::size_t k = rules_.size(); k-- > 0;) {
      if (!live[k] || rules_[k].terminal) continue;
      live[rules_[k].left] = true;
      live[rules_[k].right] = true;
    }
    std::vector<RuleId> remap(rules_.size(), 0);
    std::vector<Rule> out;
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      if (!live[k]) continue;
      remap[k] = static_cast<RuleId>(out.size());
      Rule x = rules_[k];
      if (!x.terminal) {
        x.left = remap[x.left];
        x.right = remap[x.right];
      }
      out.push_back(std::move(x));
    }
    for (auto& s : starts) s = remap[s];
    return Grammar(std::move(out), std::move(starts), ms_len);
  }

 private:
  RuleId push(Rule x, std::uint64_t len, std::uint32_t h) {
    rules_.push_back(std::move(x));
    len_.push_back(len);
    height_.push_back(h);
    return static_cast<RuleId>(rules_.size() - 1);
  }

  std::vector<Rule> rules_;
  std::vector<std::uint64_t> len_;
  std::vector<std::uint32_t> height_;
  std::unordered_map<std::string, RuleId> leaves_;
  std::unordered_map<std::uint64_t, RuleId, PairHash> pairs_;
};

RuleId balanced(RulePool& pool, const std::vector<RuleId>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  std::size_t mid = lo + (hi - lo + 1) / 2;
  RuleId l = balanced(pool, leaves, lo, mid);
  RuleId r = balanced(pool, leaves, mid, hi);
  return pool.node(l, r);
}

RuleId balanced_over(RulePool& pool, std::string_view text, unsigned chunk) {
  std::vector<RuleId> leaves;
  for (std::size_t p = 0; p < text.size(); p += chunk) leaves.push_back(pool.leaf(std::string(text.substr(p, chunk))));
  return balanced(pool, leaves, 0, leaves.size());
}

// Path-copying edits over a hash-consed AVL-shaped tree.
class TreeEditor {
 public:
  TreeEditor(RulePool& pool, unsigned ms_len) : pool_(pool), ms_(ms_len) {}

  char at(RuleId a, std::uint64_t pos) const {
    while (!pool_.rule(a).terminal) {
      RuleId l = pool_.rule(a).left;
      if (pos <= pool_.len(l)) {
        a = l;
      } else {
        pos -= pool_.len(l);
        a = pool_.rule(a).right;
      }
    }
    return pool_.rule(a).symbols[pos - 1];
  }

  RuleId substitute(RuleId a, std::uint64_t pos, char c) {
    const Rule& x = pool_.rule(a);
    if (x.terminal) {
      std::string s = x.symbols;
      s[pos - 1] = c;
      return pool_.leaf(s);
    }
    RuleId l = x.left, r = x.right;
    if (pos <= pool_.len(l)) return pool_.node(substitute(l, pos, c), r);
    return pool_.node(l, substitute(r, pos - pool_.len(l), c));
  }

  RuleId erase(RuleId a, std::uint64_t pos) {
    const Rule& x = pool_.rule(a);
    if (x.terminal) {
      std::string s = x.symbols;
      s.erase(pos - 1, 1);
      return pool_.leaf(s);
    }
    RuleId l = x.left, r = x.right;
    if (pos <= pool_.len(l)) return pool_.node(erase(l, pos), r);
    return pool_.node(l, erase(r, pos - pool_.len(l)));
  }

  // Inserts c so that it becomes symbol pos of s(a), pos in [1, len+1].
  RuleId insert(RuleId a, std::uint64_t pos, char c) {
    const Rule& x = pool_.rule(a);
    if (x.terminal) {
      std::string s = x.symbols;
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos - 1), c);
      if (s.size() <= ms_) return pool_.leaf(s);
      std::size_t cut = (ms_ + 1) / 2;
      return pool_.node(pool_.leaf(s.substr(0, cut)), pool_.leaf(s.substr(cut)));
    }
    RuleId l = x.left, r = x.right;
    if (pos <= pool_.len(l) + 1) return balance(insert(l, pos, c), r);
    return balance(l, insert(r, pos - pool_.len(l), c));
  }

 private:
  RuleId balance(RuleId l, RuleId r) {
    std::uint32_t hl = pool_.height(l), hr = pool_.height(r);
    if (hl > hr + 1) {
      RuleId ll = pool_.rule(l).left, lr = pool_.rule(l).right;
      if (pool_.height(ll) >= pool_.height(lr)) return pool_.node(ll, pool_.node(lr, r));
      RuleId lrl = pool_.rule(lr).left, lrr = pool_.rule(lr).right;
      return pool_.node(pool_.node(ll, lrl), pool_.node(lrr, r));
    }
    if (hr > hl + 1) {
      RuleId rl = pool_.rule(r).left, rr = pool_.rule(r).right;
      if (pool_.height(rr) >= pool_.height(rl)) return pool_.node(pool_.node(l, rl), rr);
      RuleId rll = pool_.rule(rl).left, rlr = pool_.rule(rl).right;
      return pool_.node(pool_.node(l, rll), pool_.node(rlr, rr));
    }
    return pool_.node(l, r);
  }

  RulePool& pool_;
  unsigned ms_;
};

}  // namespace

Grammar build_generic(const std::vector<std::string>& docs, unsigned chunk) {
  if (chunk == 0) throw BuildError("chunk length must be at least 1");
  if (docs.empty()) throw BuildError("collection has no documents");
  RulePool pool;
  std::vector<RuleId> starts;
  for (const auto& d : docs) {
    if (d.empty()) throw BuildError("empty document");
    starts.push_back(balanced_over(pool, d, chunk));
  }
  return pool.finish(std::move(starts), chunk);
}

Grammar build_repetitive(const EditScript& script, std::string_view base, unsigned ms_len) {
  if (ms_len == 0) throw BuildError("metasymbol length must be at least 1");
  if (base.empty()) throw BuildError("empty base document");
  script.check_targets();
  RulePool pool;
  TreeEditor ed(pool, ms_len);
  RuleId tree = balanced_over(pool, base, ms_len);
  std::vector<char> saved(script.edits.size(), 0);
  std::vector<RuleId> starts;
  for (std::uint32_t d = 1; d <= script.documents; ++d) {
    for (std::size_t k = 0; k < script.edits.size(); ++k) {
      const Edit& e = script.edits[k];
      std::uint64_t len = pool.len(tree);
      if (e.first == d) {
        switch (e.kind) {
          case EditKind::Substitute:
            if (e.pos > len) throw ScriptError("substitution beyond document end");
            saved[k] = ed.at(tree, e.pos);
            tree = ed.substitute(tree, e.pos, e.symbol);
            break;
          case EditKind::Insert:
            if (e.pos > len + 1) throw ScriptError("insertion beyond document end");
            tree = ed.insert(tree, e.pos, e.symbol);
            break;
          case EditKind::Delete:
            if (e.pos > len) throw ScriptError("deletion beyond document end");
            saved[k] = ed.at(tree, e.pos);
            tree = ed.erase(tree, e.pos);
            break;
        }
      } else if (e.last + 1 == d) {
        switch (e.kind) {
          case EditKind::Substitute:
            if (e.pos <= len && ed.at(tree, e.pos) == e.symbol) tree = ed.substitute(tree, e.pos, saved[k]);
            break;
          case EditKind::Insert:
            if (e.pos <= len && ed.at(tree, e.pos) == e.symbol) tree = ed.erase(tree, e.pos);
            break;
          case EditKind::Delete:
            if (e.pos <= len + 1) tree = ed.insert(tree, e.pos, saved[k]);
            break;
        }
      }
    }
    if (pool.len(tree) == 0) throw ScriptError("edits leave a document empty");
    starts.push_back(tree);
  }
  return pool.finish(std::move(starts), ms_len);
}

}  // namespace gdl::grammar
