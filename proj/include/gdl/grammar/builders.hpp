#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gdl/grammar/edit_script.hpp"
#include "gdl/grammar/grammar.hpp"

namespace gdl::grammar {

// One perfectly balanced parse tree per document over terminals of `chunk`
// symbols (the last chunk of a document may be shorter). Rules are shared
// across documents by hash-consing. Throws BuildError on empty documents.
Grammar build_generic(const std::vector<std::string>& docs, unsigned chunk = 1);

// Edit-model construction. Document 1 starts from `base` cut into metasymbols
// of ms_len symbols under a balanced tree; each later document copies the
// previous tree and applies its edits by path copying. Insertions that
// overflow a metasymbol split it in two and rebalance AVL-style. Throws
// ScriptError when an edit position falls outside its document.
Grammar build_repetitive(const EditScript& script, std::string_view base, unsigned ms_len = 1);

}  // namespace gdl::grammar
