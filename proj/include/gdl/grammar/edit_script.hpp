#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gdl::grammar {

enum class EditKind { Substitute, Insert, Delete };

// One edit applied to documents [first, last]. It is applied when document
// `first` is derived from its predecessor and undone (when the position still
// carries the edited value) when document last+1 is derived.
//
// Positions are 1-based. A substitution or deletion targets symbol `pos`;
// an insertion places `symbol` so that it becomes symbol `pos`.
struct Edit {
  EditKind kind = EditKind::Substitute;
  std::uint64_t pos = 1;
  char symbol = 0;
  std::uint32_t first = 1;
  std::uint32_t last = 1;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct EditScript {
  std::uint32_t documents = 1;
  std::vector<Edit> edits;

  // Throws ScriptError unless every target lies in [1, documents].
  void check_targets() const;

  friend bool operator==(const EditScript&, const EditScript&) = default;
};

// Line format:
//   documents D
//   edits s
//   sub|ins|del pos symbol first last      (symbol as a decimal byte value)
std::string format_script(const EditScript& script);
EditScript parse_script(std::string_view text);

std::string_view kind_name(EditKind k);

}  // namespace gdl::grammar
