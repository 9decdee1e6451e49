#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/grammar/edit_script.hpp"

namespace gdl::collection {

enum class EditModel { Single, Range, Subtree };

std::string_view model_name(EditModel m);
EditModel parse_model(std::string_view name);

struct Occurrence {
  std::uint32_t doc = 0;       // 1-based
  std::uint64_t offset = 0;    // 1-based within the document
  std::uint64_t global = 0;    // 1-based within the concatenation

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

struct Collection {
  std::vector<std::string> docs;
  std::string provenance = "ingested";  // "generated" or "ingested"
  std::uint64_t seed = 0;
  std::optional<grammar::EditScript> script;
  std::string base;

  std::uint32_t num_docs() const { return static_cast<std::uint32_t>(docs.size()); }
  std::uint64_t total_length() const;
  // Distinct byte values used.
  unsigned sigma() const;
  // Global 1-based offset of the first symbol of each document.
  std::vector<std::uint64_t> boundaries() const;
};

struct GenParams {
  std::uint64_t seed = 1;
  std::uint64_t n = 100;
  std::uint32_t docs = 10;
  std::uint64_t edits = 10;
  unsigned sigma = 4;
  EditModel model = EditModel::Range;
};

// The symbol alphabet used by the generator: letters, then digits, then the
// remaining byte values in increasing order.
char alphabet_symbol(unsigned k);

// Random base document plus `edits` edits. Targets are drawn per model and
// sorted by first document; kinds, positions and symbols are drawn while
// replaying, so every edit is valid when applied. Deterministic per seed.
Collection generate(const GenParams& p);

// Applies the script to `base` symbol by symbol on plain strings.
std::vector<std::string> replay_naive(const grammar::EditScript& script, std::string_view base);

// One document per file, ordered by path. Empty files raise BuildError,
// unreadable ones IoError.
Collection ingest(std::vector<std::filesystem::path> paths);

// .col files hold one escaped document per line (see escape_bytes).
std::string escape_bytes(std::string_view raw);
std::string unescape_bytes(std::string_view text);
std::string write_col(const std::vector<std::string>& docs);
std::vector<std::string> read_col(std::string_view text);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view data);

}  // namespace gdl::collection
