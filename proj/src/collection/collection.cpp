#include "gdl/collection/collection.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "gdl/collection/version_tree.hpp"
#include "gdl/error.hpp"

namespace gdl::collection {

using grammar::Edit;
using grammar::EditKind;
using grammar::EditScript;

std::string_view model_name(EditModel m) {
  switch (m) {
    case EditModel::Single:
      return "single";
    case EditModel::Range:
      return "range";
    case EditModel::Subtree:
      return "subtree";
  }
  return "?";
}

EditModel parse_model(std::string_view name) {
  if (name == "single") return EditModel::Single;
  if (name == "range") return EditModel::Range;
  if (name == "subtree") return EditModel::Subtree;
  throw DomainError("unknown edit model '" + std::string(name) + "'");
}

std::uint64_t Collection::total_length() const {
  std::uint64_t n = 0;
  for (const auto& d : docs) n += d.size();
  return n;
}

unsigned Collection::sigma() const {
  std::vector<bool> seen(256, false);
  for (const auto& d : docs)
    for (char c : d) seen[static_cast<unsigned char>(c)] = true;
  return static_cast<unsigned>(std::count(seen.begin(), seen.end(), true));
}

std::vector<std::uint64_t> Collection::boundaries() const {
  std::vector<std::uint64_t> b;
  std::uint64_t at = 1;
  for (const auto& d : docs) {
    b.push_back(at);
    at += d.size();
  }
  return b;
}

char alphabet_symbol(unsigned k) {
  static const std::string kFirst = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  if (k < kFirst.size()) return kFirst[k];
  k -= static_cast<unsigned>(kFirst.size());
  for (unsigned b = 0; b < 256; ++b) {
    if (kFirst.find(static_cast<char>(b)) != std::string::npos) continue;
    if (k-- == 0) return static_cast<char>(b);
  }
  throw DomainError("alphabet has at most 256 symbols");
}

namespace {

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

struct Undo {
  char saved = 0;
};

// Applies or undoes e on text. `draw` fills in kind, position and symbol
// of applied edits before they take effect.
template <class Draw>
void step(std::string& text, Edit& e, Undo& u, bool apply, Draw&& draw) {
  std::uint64_t len = text.size();
  if (apply) {
    draw(e, text);
    switch (e.kind) {
      case EditKind::Substitute:
        if (e.pos < 1 || e.pos > len) throw ScriptError("substitution beyond document end");
        u.saved = text[e.pos - 1];
        text[e.pos - 1] = e.symbol;
        break;
      case EditKind::Insert:
        if (e.pos < 1 || e.pos > len + 1) throw ScriptError("insertion beyond document end");
        text.insert(text.begin() + static_cast<std::ptrdiff_t>(e.pos - 1), e.symbol);
        break;
      case EditKind::Delete:
        if (e.pos < 1 || e.pos > len) throw ScriptError("deletion beyond document end");
        u.saved = text[e.pos - 1];
        text.erase(e.pos - 1, 1);
        break;
    }
    return;
  }
  switch (e.kind) {
    case EditKind::Substitute:
      if (e.pos <= len && text[e.pos - 1] == e.symbol) text[e.pos - 1] = u.saved;
      break;
    case EditKind::Insert:
      if (e.pos <= len && text[e.pos - 1] == e.symbol) text.erase(e.pos - 1, 1);
      break;
    case EditKind::Delete:
      if (e.pos <= len + 1) text.insert(text.begin() + static_cast<std::ptrdiff_t>(e.pos - 1), u.saved);
      break;
  }
}

template <class Draw>
std::vector<std::string> run(EditScript& script, std::string_view base, Draw&& draw) {
  std::vector<std::string> docs;
  std::vector<Undo> undo(script.edits.size());
  std::string text(base);
  for (std::uint32_t d = 1; d <= script.documents; ++d) {
    for (std::size_t k = 0; k < script.edits.size(); ++k) {
      Edit& e = script.edits[k];
      if (e.first == d)
        step(text, e, undo[k], true, draw);
      else if (e.last + 1 == d)
        step(text, e, undo[k], false, draw);
    }
    if (text.empty()) throw ScriptError("edits leave a document empty");
    docs.push_back(text);
  }
  return docs;
}

}  // namespace

std::vector<std::string> replay_naive(const EditScript& script, std::string_view base) {
  script.check_targets();
  EditScript copy = script;
  return run(copy, base, [](Edit&, const std::string&) {});
}

Collection generate(const GenParams& p) {
  if (p.n < 1) throw DomainError("base length must be at least 1");
  if (p.docs < 1) throw DomainError("need at least one document");
  if (p.sigma < 2 || p.sigma > 256) throw DomainError("alphabet size must lie in [2, 256]");
  std::mt19937_64 rng(p.seed);
  Collection c;
  c.provenance = "generated";
  c.seed = p.seed;
  for (std::uint64_t i = 0; i < p.n; ++i) c.base.push_back(alphabet_symbol(static_cast<unsigned>(uniform(rng, 0, p.sigma - 1))));

  std::optional<VersionTree> tree;
  if (p.model == EditModel::Subtree) tree = VersionTree::random(rng, p.docs);
  auto draw_targets = [&] {
    EditScript script;
    script.documents = p.docs;
    for (std::uint64_t k = 0; k < p.edits; ++k) {
      Edit e;
      switch (p.model) {
        case EditModel::Single: {
          auto d = static_cast<std::uint32_t>(p.docs == 1 ? 1 : uniform(rng, 2, p.docs));
          e.first = e.last = d;
          break;
        }
        case EditModel::Range:
          e.first = static_cast<std::uint32_t>(uniform(rng, 1, p.docs));
          e.last = static_cast<std::uint32_t>(uniform(rng, e.first, p.docs));
          break;
        case EditModel::Subtree: {
          auto v = static_cast<std::uint32_t>(uniform(rng, 0, p.docs - 1));
          std::tie(e.first, e.last) = tree->subtree_range(v);
          break;
        }
      }
      script.edits.push_back(e);
    }
    std::stable_sort(script.edits.begin(), script.edits.end(),
                     [](const Edit& a, const Edit& b) { return a.first < b.first; });
    return script;
  };

  auto draw = [&](Edit& e, const std::string& text) {
    std::uint64_t len = text.size();
    std::uint64_t kinds = len > 1 ? 3 : 2;
    switch (len == 0 ? 1 : uniform(rng, 0, kinds - 1)) {
      case 0:
        e.kind = EditKind::Substitute;
        e.pos = uniform(rng, 1, len);
        {
          char old = text[e.pos - 1];
          do {
            e.symbol = alphabet_symbol(static_cast<unsigned>(uniform(rng, 0, p.sigma - 1)));
          } while (e.symbol == old);
        }
        break;
      case 1:
        e.kind = EditKind::Insert;
        e.pos = uniform(rng, 1, len + 1);
        e.symbol = alphabet_symbol(static_cast<unsigned>(uniform(rng, 0, p.sigma - 1)));
        break;
      default:
        e.kind = EditKind::Delete;
        e.pos = uniform(rng, 1, len);
        e.symbol = 0;
        break;
    }
  };
  // Undoing an insertion can empty a document; such scripts are redrawn from
  // the continuing random stream.
  for (;;) {
    EditScript script = draw_targets();
    try {
      c.docs = run(script, c.base, draw);
    } catch (const ScriptError&) {
      continue;
    }
    c.script = std::move(script);
    return c;
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + p.string());
  return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + p.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("cannot write " + p.string());
}

Collection ingest(std::vector<std::filesystem::path> paths) {
  if (paths.empty()) throw BuildError("no input files");
  std::sort(paths.begin(), paths.end());
  Collection c;
  c.provenance = "ingested";
  for (const auto& p : paths) {
    auto text = read_file(p);
    if (text.empty()) throw BuildError("empty document " + p.string());
    c.docs.push_back(std::move(text));
  }
  return c;
}

std::string escape_bytes(std::string_view raw) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else if (c == '\r') {
      out += "\\r";
    } else if (c < 0x20 || c >= 0x7f) {
      out += "\\x";
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

std::string unescape_bytes(std::string_view text) {
  auto hex = [](char h) -> int {
    if (h >= '0' && h <= '9') return h - '0';
    if (h >= 'a' && h <= 'f') return h - 'a' + 10;
    if (h >= 'A' && h <= 'F') return h - 'A' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out.push_back(text[i]);
      continue;
    }
    if (++i == text.size()) throw DomainError("dangling escape");
    switch (text[i]) {
      case '\\':
        out.push_back('\\');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'r':
        out.push_back('\r');
        break;
      case 'x': {
        int a = i + 1 < text.size() ? hex(text[i + 1]) : -1;
        int b = i + 2 < text.size() ? hex(text[i + 2]) : -1;
        if (a < 0 || b < 0) throw DomainError("bad \\x escape");
        out.push_back(static_cast<char>(a * 16 + b));
        i += 2;
        break;
      }
      default:
        throw DomainError(std::string("unknown escape \\") + text[i]);
    }
  }
  return out;
}

std::string write_col(const std::vector<std::string>& docs) {
  std::string out;
  for (const auto& d : docs) {
    out += escape_bytes(d);
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> read_col(std::string_view text) {
  std::vector<std::string> docs;
  std::size_t at = 0;
  while (at < text.size()) {
    auto nl = text.find('\n', at);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(at, nl - at);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) throw BuildError("empty document in collection file");
    docs.push_back(unescape_bytes(line));
    at = nl + 1;
  }
  return docs;
}

}  // namespace gdl::collection
