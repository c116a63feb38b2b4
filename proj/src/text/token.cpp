#include "figura/text/token.hpp"

#include "figura/text/utf8.hpp"

namespace figura::text {

namespace {

constexpr std::array<std::string_view, 11> kPosNames = {
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "NUM", "PART", "PREP", "CONJ", "PUNCT", "OTHER"};

}  // namespace

std::string_view to_string(PosTag tag) { return kPosNames[static_cast<std::size_t>(tag)]; }

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return kAllPosTags[i];
  }
  return std::nullopt;
}

bool covers_exactly(std::string_view text, const std::vector<Token>& tokens) {
  const auto cps = to_u32(text);
  std::size_t cursor = 0;
  for (const auto& tok : tokens) {
    if (tok.char_start != cursor || tok.char_end <= tok.char_start || tok.char_end > cps.size()) {
      return false;
    }
    if (to_utf8(std::u32string_view(cps).substr(tok.char_start, tok.char_end - tok.char_start)) !=
        tok.surface) {
      return false;
    }
    cursor = tok.char_end;
  }
  return cursor == cps.size();
}

}  // namespace figura::text
