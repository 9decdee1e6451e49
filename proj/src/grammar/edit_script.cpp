#include "gdl/grammar/edit_script.hpp"

#include <sstream>

#include "gdl/error.hpp"

namespace gdl::grammar {

std::string_view kind_name(EditKind k) {
  switch (k) {
    case EditKind::Substitute:
      return "sub";
    case EditKind::Insert:
      return "ins";
    case EditKind::Delete:
      return "del";
  }
  return "?";
}

void EditScript::check_targets() const {
  if (documents == 0) throw ScriptError("script must describe at least one document");
  for (const auto& e : edits) {
    if (e.first < 1 || e.first > e.last || e.last > documents) throw ScriptError("edit target outside [1, D]");
    if (e.pos < 1) throw ScriptError("edit position must be positive");
  }
}

std::string format_script(const EditScript& script) {
  std::ostringstream out;
  out << "documents " << script.documents << "\n";
  out << "edits " << script.edits.size() << "\n";
  for (const auto& e : script.edits) {
    out << kind_name(e.kind) << ' ' << e.pos << ' ' << static_cast<unsigned>(static_cast<unsigned char>(e.symbol))
        << ' ' << e.first << ' ' << e.last << "\n";
  }
  return out.str();
}

EditScript parse_script(std::string_view text) {
  std::istringstream in{std::string(text)};
  EditScript s;
  std::string word;
  std::uint64_t count = 0;
  if (!(in >> word) || word != "documents" || !(in >> s.documents)) throw ScriptError("missing 'documents' header");
  if (!(in >> word) || word != "edits" || !(in >> count)) throw ScriptError("missing 'edits' header");
  for (std::uint64_t k = 0; k < count; ++k) {
    Edit e;
    unsigned sym = 0;
    if (!(in >> word >> e.pos >> sym >> e.first >> e.last)) throw ScriptError("truncated edit line");
    if (word == "sub")
      e.kind = EditKind::Substitute;
    else if (word == "ins")
      e.kind = EditKind::Insert;
    else if (word == "del")
      e.kind = EditKind::Delete;
    else
      throw ScriptError("unknown edit kind '" + word + "'");
    if (sym > 255) throw ScriptError("symbol is not a byte value");
    e.symbol = static_cast<char>(static_cast<unsigned char>(sym));
    s.edits.push_back(e);
  }
  if (in >> word) throw ScriptError("trailing content after edits");
  s.check_targets();
  return s;
}

}  // namespace gdl::grammar
