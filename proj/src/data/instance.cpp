#include "figura/data/instance.hpp"

#include <set>
#include <stdexcept>

#include "figura/text/utf8.hpp"

namespace figura::data {

using nlohmann::json;

std::string_view to_string(TokenLabel l) {
  switch (l) {
    case TokenLabel::MRW:
      return "MRW";
    case TokenLabel::Literal:
      return "literal";
    case TokenLabel::MFlag:
      return "MFlag";
  }
  return "literal";
}

std::string_view to_string(SentenceLabel l) {
  switch (l) {
    case SentenceLabel::Metaphor:
      return "metaphor";
    case SentenceLabel::Literal:
      return "literal";
    case SentenceLabel::Other:
      return "other";
  }
  return "literal";
}

std::string_view to_string(SpanRole r) {
  switch (r) {
    case SpanRole::Tenor:
      return "tenor";
    case SpanRole::Vehicle:
      return "vehicle";
    case SpanRole::Ground:
      return "ground";
    case SpanRole::SourceDomain:
      return "source_domain";
    case SpanRole::TargetDomain:
      return "target_domain";
    case SpanRole::Figure:
      return "figure";
  }
  return "figure";
}

std::string_view to_string(LabelType t) {
  switch (t) {
    case LabelType::Token:
      return "token";
    case LabelType::Sentence:
      return "sentence";
    case LabelType::Span:
      return "span";
  }
  return "sentence";
}

std::optional<TokenLabel> parse_token_label(std::string_view s) {
  if (s == "MRW") return TokenLabel::MRW;
  if (s == "literal") return TokenLabel::Literal;
  if (s == "MFlag") return TokenLabel::MFlag;
  return std::nullopt;
}

std::optional<SentenceLabel> parse_sentence_label(std::string_view s) {
  if (s == "metaphor") return SentenceLabel::Metaphor;
  if (s == "literal") return SentenceLabel::Literal;
  if (s == "other") return SentenceLabel::Other;
  return std::nullopt;
}

std::optional<SpanRole> parse_span_role(std::string_view s) {
  for (auto r : {SpanRole::Tenor, SpanRole::Vehicle, SpanRole::Ground, SpanRole::SourceDomain,
                 SpanRole::TargetDomain, SpanRole::Figure}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<LabelType> parse_label_type(std::string_view s) {
  for (auto t : {LabelType::Token, LabelType::Sentence, LabelType::Span}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

LabelType GoldInstance::label_type() const noexcept {
  if (tokens) return LabelType::Token;
  if (spans) return LabelType::Span;
  return LabelType::Sentence;
}

json to_json(const GoldInstance& in) {
  json j{{"source_id", in.source_id}, {"text", in.text}};
  if (in.tokens) {
    json toks = json::array();
    for (const auto& t : *in.tokens) {
      toks.push_back(json{{"surface", t.surface}, {"label", to_string(t.label)}});
    }
    j["tokens"] = std::move(toks);
  }
  if (in.sentence_label) j["sentence_label"] = to_string(*in.sentence_label);
  if (in.spans) {
    json spans = json::array();
    for (const auto& s : *in.spans) {
      json o{{"role", to_string(s.role)}, {"text", s.text}};
      if (s.start) o["start"] = *s.start;
      if (s.end) o["end"] = *s.end;
      spans.push_back(std::move(o));
    }
    j["spans"] = std::move(spans);
  }
  if (in.register_name) j["register"] = *in.register_name;
  if (in.split) j["split"] = *in.split;
  return j;
}

namespace {

const std::set<std::string>& known_fields() {
  static const std::set<std::string> f{"source_id", "text",     "tokens", "sentence_label",
                                       "spans",     "register", "split"};
  return f;
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

GoldInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  for (const auto& [k, _] : j.items()) {
    if (!known_fields().contains(k)) throw std::invalid_argument("unknown field '" + k + "'");
  }
  GoldInstance in;
  in.source_id = require_string(j, "source_id");
  in.text = require_string(j, "text");
  if (in.source_id.empty()) throw std::invalid_argument("source_id must not be empty");

  if (j.contains("tokens")) {
    const auto u32 = text::to_u32(in.text);
    std::vector<GoldToken> tokens;
    std::size_t pos = 0;
    for (const auto& t : j.at("tokens")) {
      GoldToken tok;
      tok.surface = require_string(t, "surface");
      const auto label = parse_token_label(require_string(t, "label"));
      if (!label) throw std::invalid_argument("unknown token label in " + in.source_id);
      tok.label = *label;
      const auto s = text::to_u32(tok.surface);
      if (s.empty()) throw std::invalid_argument("empty token surface in " + in.source_id);
      while (pos < u32.size() && u32.compare(pos, s.size(), s) != 0 && text::is_whitespace(u32[pos])) {
        ++pos;
      }
      if (u32.compare(pos, s.size(), s) != 0) {
        throw std::invalid_argument("token '" + tok.surface + "' does not follow the text in " +
                                    in.source_id);
      }
      tok.char_start = pos;
      tok.char_end = pos + s.size();
      pos = tok.char_end;
      tokens.push_back(std::move(tok));
    }
    in.tokens = std::move(tokens);
  }
  if (j.contains("sentence_label")) {
    const auto label = parse_sentence_label(require_string(j, "sentence_label"));
    if (!label) throw std::invalid_argument("unknown sentence_label in " + in.source_id);
    in.sentence_label = label;
  }
  if (j.contains("spans")) {
    std::vector<GoldSpan> spans;
    for (const auto& s : j.at("spans")) {
      GoldSpan span;
      const auto role = parse_span_role(require_string(s, "role"));
      if (!role) throw std::invalid_argument("unknown span role in " + in.source_id);
      span.role = *role;
      span.text = s.value("text", std::string());
      if (s.contains("start") != s.contains("end")) {
        throw std::invalid_argument("span needs both start and end in " + in.source_id);
      }
      if (s.contains("start")) {
        span.start = s.at("start").get<std::size_t>();
        span.end = s.at("end").get<std::size_t>();
      }
      spans.push_back(std::move(span));
    }
    in.spans = std::move(spans);
  }
  if (j.contains("register")) in.register_name = require_string(j, "register");
  if (j.contains("split")) in.split = require_string(j, "split");
  check_instance(in);
  return in;
}

void check_instance(const GoldInstance& in) {
  const std::size_t n = text::length(in.text);
  if (in.tokens && (in.sentence_label || in.spans)) {
    throw std::invalid_argument("token-labelled instance " + in.source_id +
                                " must not carry sentence_label or spans");
  }
  if (!in.tokens && !in.sentence_label) {
    throw std::invalid_argument("instance " + in.source_id + " has no labels");
  }
  if (in.spans) {
    for (const auto& s : *in.spans) {
      if (!s.located()) continue;
      if (*s.start >= *s.end || *s.end > n) {
        throw std::invalid_argument("span offsets out of bounds in " + in.source_id);
      }
      if (!s.text.empty() && text::slice(in.text, *s.start, *s.end) != s.text) {
        throw std::invalid_argument("span text does not match offsets in " + in.source_id);
      }
    }
  }
}

}  // namespace figura::data
