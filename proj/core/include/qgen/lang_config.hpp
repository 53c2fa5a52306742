#pragma once

#include <string>
#include <string_view>

#include "qgen/conllu.hpp"

namespace qgen {

enum class QwordPosition { Start, End };

// Per-language preprocessing switches and question word position.
struct LangConfig {
  bool lowercase = false;
  bool remove_punctuation = false;
  bool remove_diacritics = false;
  QwordPosition qword_position = QwordPosition::Start;
};

// Reads a key=value config file ("#" comments, blank lines ignored).
// Keys: lowercase, remove_punctuation, remove_diacritics (true/false),
// qword_position (start/end). Unknown keys or values are errors.
LangConfig load_lang_config(const std::string& path);
LangConfig parse_lang_config(std::string_view text);

// Applies, in order: lowercasing, punctuation removal (Unicode P*, with
// whitespace runs collapsed afterwards), diacritics removal (canonical
// decomposition, combining marks stripped). Identity when all flags are off.
std::string preprocess_text(std::string_view text, const LangConfig& cfg);

// Case/diacritic transform on node forms and lemmas; glyphs are never
// stripped from a form. When remove_punctuation is set, PUNCT-upos nodes are
// dropped from the tree instead (children, if any, reattach to the dropped
// node's head; a PUNCT root is kept).
DepTree preprocess_tree(const DepTree& tree, const LangConfig& cfg);

}  // namespace qgen
