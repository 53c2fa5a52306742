#pragma once

#include <string>
#include <string_view>

// Internal UTF-8 helpers backed by ICU. Invalid byte sequences pass through
// unchanged.

namespace qgen::uni {

std::string to_lower(std::string_view s);

// Drops all code points of Unicode general category P*; collapses the
// resulting whitespace runs to single spaces and trims the ends.
std::string remove_punctuation(std::string_view s);

// NFD-decomposes and drops combining marks (category M*).
std::string remove_diacritics(std::string_view s);

// True for a non-empty string whose code points are all category P*.
bool all_punctuation(std::string_view s);

}  // namespace qgen::uni
