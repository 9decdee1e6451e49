#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "gdl/collection/collection.hpp"
#include "gdl/doclist/doc_index.hpp"
#include "gdl/grammar/grammar.hpp"
#include "gdl/index/pattern_index.hpp"

namespace gdl::cli {

struct BuildOptions {
  unsigned ms_len = 1;
  double epsilon = 0.5;
  unsigned tau = 0;
  doclist::ListLayout layout = doclist::ListLayout::Leaf;
};

struct IndexBundle {
  std::string meta;  // opaque JSON text
  std::shared_ptr<const grammar::Grammar> grammar;
  std::shared_ptr<const index::PatternIndex> pattern;
  std::shared_ptr<const doclist::DocIndex> docs;
};

// Repetitive builder when the collection carries its edit script, generic
// builder otherwise.
IndexBundle build_index(const collection::Collection& c, const BuildOptions& opt);

// File layout: magic "GDLIDX01", u32 version, u32 section count, then per
// section u32 tag, u64 length, u64 FNV-1a of the payload, payload. Sections
// are META, GRAM, GRID and DOCL, in that order.
inline constexpr char kMagic[] = "GDLIDX01";
inline constexpr std::uint32_t kContainerVersion = 1;

std::string save_container(const IndexBundle& b);
IndexBundle load_container(std::string_view bytes);

}  // namespace gdl::cli
