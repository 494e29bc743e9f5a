#pragma once

#include <string>
#include <string_view>

namespace galt::unicode {

// Decodes UTF-8; malformed sequences become U+FFFD.
std::u32string decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

bool is_space(char32_t cp) noexcept;

// Letters, digits and combining marks. Punctuation, symbols, separators and
// controls are not word characters.
bool is_word_char(char32_t cp) noexcept;

// Simple case folding for Latin (ASCII, Latin-1, Extended-A), Greek and
// Cyrillic. Other scripts are returned unchanged.
char32_t to_lower(char32_t cp) noexcept;

}  // namespace galt::unicode
