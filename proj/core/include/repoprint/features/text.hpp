#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace repoprint::features {

/// Maps comment text to English before length measurement.
using TextTranslator = std::function<std::string(std::string_view)>;

TextTranslator identity_translator();

/// Pipes each text through `command` (stdin -> stdout) via the shell. A
/// failing command leaves the text unchanged.
TextTranslator command_translator(std::string command);

/// Trim and collapse whitespace runs (space, tab, newline) to one space.
std::string normalize_whitespace(std::string_view text);

/// LDA tokenization: ASCII-lowercase, split on non-alphanumerics, drop
/// tokens shorter than two characters and English stopwords.
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(std::string_view token);

}  // namespace repoprint::features
