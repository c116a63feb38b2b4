#include "figura/text/segmenter.hpp"

#include <algorithm>
#include <stdexcept>

#include "figura/text/normalize.hpp"
#include "figura/text/utf8.hpp"

namespace figura::text {

MaxMatchSegmenter::MaxMatchSegmenter(std::shared_ptr<const Lexicon> lexicon)
    : lexicon_(std::move(lexicon)) {
  if (!lexicon_) throw std::invalid_argument("MaxMatchSegmenter requires a lexicon");
}

std::vector<Token> MaxMatchSegmenter::segment(std::string_view sentence_text) const {
  return text::segment(sentence_text, *lexicon_);
}

std::vector<Token> segment(std::string_view sentence_text, const Lexicon& lexicon) {
  const std::u32string cps = to_u32(sentence_text);
  const std::u32string_view view(cps);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    std::size_t take = 1;
    const std::size_t longest = std::min(lexicon.max_word_length(), cps.size() - i);
    for (std::size_t len = longest; len >= 2; --len) {
      if (lexicon.find(view.substr(i, len)) != nullptr) {
        take = len;
        break;
      }
    }
    tokens.push_back(Token{to_utf8(view.substr(i, take)), i, i + take, PosTag::Other});
    i += take;
  }
  return tokens;
}

std::vector<Token> pos_tag(std::vector<Token> tokens, const Lexicon& lexicon) {
  for (auto& tok : tokens) {
    const auto cps = to_u32(tok.surface);
    if (!cps.empty() && std::all_of(cps.begin(), cps.end(), is_punctuation)) {
      tok.pos = PosTag::Punct;
    } else if (const auto* entry = lexicon.find(std::u32string_view(cps))) {
      tok.pos = entry->pos;
    } else {
      tok.pos = PosTag::Other;
    }
  }
  return tokens;
}

Sentence preprocess(std::string_view raw_text, std::string source_id, const Segmenter& segmenter,
                    const Lexicon& lexicon) {
  Sentence s;
  s.source_id = std::move(source_id);
  s.text = normalize(raw_text);
  s.tokens = pos_tag(segmenter.segment(s.text), lexicon);
  return s;
}

Sentence from_segmentation(std::string text, std::string source_id,
                           const std::vector<std::string>& surfaces, const Lexicon& lexicon) {
  Sentence s;
  s.source_id = std::move(source_id);
  s.text = std::move(text);
  std::size_t cursor = 0;
  for (const auto& surface : surfaces) {
    const std::size_t len = length(surface);
    if (len == 0) throw std::invalid_argument("empty token surface in " + s.source_id);
    s.tokens.push_back(Token{surface, cursor, cursor + len, PosTag::Other});
    cursor += len;
  }
  if (!covers_exactly(s.text, s.tokens)) {
    throw std::invalid_argument("token surfaces do not concatenate to the text of " +
                                s.source_id);
  }
  s.tokens = pos_tag(std::move(s.tokens), lexicon);
  return s;
}

}  // namespace figura::text
