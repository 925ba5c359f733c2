#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cama {

// Returns s without leading/trailing ASCII whitespace.
std::string_view trim_view(std::string_view s);
std::string trim(std::string_view s);

// ASCII lowercase copy.
std::string to_lower(std::string_view s);

// Collapses every run of whitespace to a single space and trims the ends.
std::string collapse_ws(std::string_view s);

// Splits on '\n'; a trailing '\r' on each line is removed.
std::vector<std::string> split_lines(std::string_view s);

// True when c is a letter or digit (ASCII).
bool is_word_char(char c);

// Finds `phrase` in `text` starting at `from`, case-insensitively and only
// at word boundaries (the characters adjacent to the match, if any, are not
// word characters). Returns std::string::npos when absent.
std::size_t find_phrase_ci(std::string_view text, std::string_view phrase,
                           std::size_t from = 0);

// Strips one leading list marker of the form "12. " or "3) " (optional
// leading whitespace, digits, '.' or ')', optional whitespace).
std::string_view strip_list_marker(std::string_view line);

// True when the trimmed string is a non-empty run of decimal digits.
bool is_bare_integer(std::string_view s);

// Joins parts with sep.
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// True when a and b are equal after lowercasing and whitespace collapsing.
bool equal_normalized(std::string_view a, std::string_view b);

}  // namespace cama
