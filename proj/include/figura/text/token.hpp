#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace figura::text {

enum class PosTag { Noun, Verb, Adj, Adv, Pron, Num, Part, Prep, Conj, Punct, Other };

inline constexpr std::array<PosTag, 11> kAllPosTags = {
    PosTag::Noun, PosTag::Verb, PosTag::Adj,  PosTag::Adv,   PosTag::Pron, PosTag::Num,
    PosTag::Part, PosTag::Prep, PosTag::Conj, PosTag::Punct, PosTag::Other};

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

// surface == sentence.text[char_start, char_end), offsets in code points.
struct Token {
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  PosTag pos = PosTag::Other;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string source_id;
  std::string text;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

// True when tokens are contiguous, non-overlapping, and cover `text` exactly.
bool covers_exactly(std::string_view text, const std::vector<Token>& tokens);

}  // namespace figura::text
