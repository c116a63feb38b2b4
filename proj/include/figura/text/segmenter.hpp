#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "figura/text/lexicon.hpp"
#include "figura/text/token.hpp"

namespace figura::text {

class Segmenter {
 public:
  virtual ~Segmenter() = default;
  // Tokens must cover `sentence_text` exactly; POS is left as OTHER.
  virtual std::vector<Token> segment(std::string_view sentence_text) const = 0;
};

// Forward maximum matching. Characters that start no lexicon word become
// single-character tokens.
class MaxMatchSegmenter final : public Segmenter {
 public:
  explicit MaxMatchSegmenter(std::shared_ptr<const Lexicon> lexicon);
  std::vector<Token> segment(std::string_view sentence_text) const override;

 private:
  std::shared_ptr<const Lexicon> lexicon_;
};

std::vector<Token> segment(std::string_view sentence_text, const Lexicon& lexicon);

// PUNCT when every code point is punctuation, otherwise the lexicon default,
// otherwise OTHER.
std::vector<Token> pos_tag(std::vector<Token> tokens, const Lexicon& lexicon);

// normalize -> segment -> pos_tag for one sentence.
Sentence preprocess(std::string_view raw_text, std::string source_id, const Segmenter& segmenter,
                    const Lexicon& lexicon);

// Builds a tagged sentence from externally supplied token surfaces (e.g. a
// gold segmentation). Throws std::invalid_argument unless the surfaces
// concatenate to `text`.
Sentence from_segmentation(std::string text, std::string source_id,
                           const std::vector<std::string>& surfaces, const Lexicon& lexicon);

}  // namespace figura::text
