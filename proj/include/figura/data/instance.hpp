#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace figura::data {

enum class TokenLabel { MRW, Literal, MFlag };
enum class SentenceLabel { Metaphor, Literal, Other };
enum class SpanRole { Tenor, Vehicle, Ground, SourceDomain, TargetDomain, Figure };
enum class LabelType { Token, Sentence, Span };

std::string_view to_string(TokenLabel l);   // "MRW", "literal", "MFlag"
std::string_view to_string(SentenceLabel l);  // "metaphor", "literal", "other"
std::string_view to_string(SpanRole r);     // "tenor", ..., "source_domain", "figure"
std::string_view to_string(LabelType t);    // "token", "sentence", "span"
std::optional<TokenLabel> parse_token_label(std::string_view s);
std::optional<SentenceLabel> parse_sentence_label(std::string_view s);
std::optional<SpanRole> parse_span_role(std::string_view s);
std::optional<LabelType> parse_label_type(std::string_view s);

// Offsets are code points into the instance text and are derived on load.
struct GoldToken {
  std::string surface;
  TokenLabel label = TokenLabel::Literal;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const GoldToken&) const = default;
};

// A span is located (start/end set) or free text only, e.g. an implicit ground
// or a domain name.
struct GoldSpan {
  SpanRole role = SpanRole::Tenor;
  std::optional<std::size_t> start;
  std::optional<std::size_t> end;
  std::string text;

  bool located() const noexcept { return start.has_value(); }
  bool operator==(const GoldSpan&) const = default;
};

struct GoldInstance {
  std::string source_id;
  std::string text;
  std::optional<std::vector<GoldToken>> tokens;
  std::optional<SentenceLabel> sentence_label;
  std::optional<std::vector<GoldSpan>> spans;
  std::optional<std::string> register_name;
  std::optional<std::string> split;

  LabelType label_type() const noexcept;
  bool operator==(const GoldInstance&) const = default;
};

// One line of the unified JSON-lines format:
//   {"source_id", "text", "tokens": [{"surface","label"}], "sentence_label",
//    "spans": [{"role","start","end","text"}], "register", "split"}
nlohmann::json to_json(const GoldInstance& instance);

// Fills token offsets by scanning the surfaces through the text; whitespace
// between tokens is skipped. Throws std::invalid_argument describing the first
// violated invariant.
GoldInstance instance_from_json(const nlohmann::json& j);

// Checks offsets against the text and the token-surface match.
void check_instance(const GoldInstance& instance);

}  // namespace figura::data
