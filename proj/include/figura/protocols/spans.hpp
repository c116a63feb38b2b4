#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "figura/protocols/types.hpp"

namespace figura::protocols {

// Every occurrence of `needle` in `text`, left to right, overlapping ones
// included. Offsets are code points.
std::vector<CharSpan> find_all(std::u32string_view text, std::string_view needle);

// Where an LLM-returned surface sits in the sentence: the last occurrence
// ending at or before `anchor.start`, else the first starting at or after
// `anchor.end`. `prefer_after` reverses the preference. Occurrences that
// overlap the anchor are never chosen. Returns nullopt when no acceptable
// occurrence exists; `overlaps_anchor` reports whether one that overlapped
// was seen.
std::optional<CharSpan> locate_around(std::u32string_view text, std::string_view needle,
                                      const CharSpan& anchor, bool prefer_after,
                                      bool* overlaps_anchor = nullptr);

// First occurrence that avoids `avoid` when possible, otherwise the first.
std::optional<CharSpan> locate_avoiding(std::u32string_view text, std::string_view needle,
                                        const std::optional<CharSpan>& avoid = std::nullopt);

}  // namespace figura::protocols
