#include "figura/protocols/spans.hpp"

#include "figura/text/utf8.hpp"

namespace figura::protocols {

std::vector<CharSpan> find_all(std::u32string_view text, std::string_view needle) {
  std::vector<CharSpan> out;
  const std::u32string n = text::to_u32(needle);
  if (n.empty() || n.size() > text.size()) return out;
  for (std::size_t pos = text.find(n); pos != std::u32string_view::npos; pos = text.find(n, pos + 1)) {
    out.push_back(CharSpan{pos, pos + n.size(), std::string(needle)});
  }
  return out;
}

std::optional<CharSpan> locate_around(std::u32string_view text, std::string_view needle,
                                      const CharSpan& anchor, bool prefer_after,
                                      bool* overlaps_anchor) {
  std::optional<CharSpan> before;
  std::optional<CharSpan> after;
  bool overlapped = false;
  for (const auto& span : find_all(text, needle)) {
    if (span.end <= anchor.start) {
      before = span;
    } else if (span.start >= anchor.end) {
      if (!after) after = span;
    } else {
      overlapped = true;
    }
  }
  if (overlaps_anchor) *overlaps_anchor = overlapped;
  if (prefer_after) return after ? after : before;
  return before ? before : after;
}

std::optional<CharSpan> locate_avoiding(std::u32string_view text, std::string_view needle,
                                        const std::optional<CharSpan>& avoid) {
  const auto all = find_all(text, needle);
  if (all.empty()) return std::nullopt;
  if (avoid) {
    for (const auto& span : all) {
      if (!span.overlaps(*avoid)) return span;
    }
  }
  return all.front();
}

}  // namespace figura::protocols
