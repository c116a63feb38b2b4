#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace figura::text {

// Offsets throughout the project count Unicode code points, not bytes.

// Ill-formed sequences decode to U+FFFD.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);
std::string to_utf8(char32_t cp);

std::size_t length(std::string_view utf8);

// Code point slice [start, end) of a UTF-8 string. Clamped to the string.
std::string slice(std::string_view utf8, std::size_t start, std::size_t end);

bool is_punctuation(char32_t cp);
bool is_whitespace(char32_t cp);

}  // namespace figura::text
