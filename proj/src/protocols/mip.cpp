#include "figura/protocols/mip.hpp"

#include <algorithm>
#include <stdexcept>

namespace figura::protocols::mip {

std::vector<std::size_t> select_candidates(const text::Sentence& sentence,
                                           std::span<const text::PosTag> pos_set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (std::find(pos_set.begin(), pos_set.end(), sentence.tokens[i].pos) != pos_set.end()) {
      out.push_back(i);
    }
  }
  return out;
}

MeaningPair analyze_word(const text::Sentence& sentence, std::size_t token_index,
                         const Dictionary& dictionary, llm::Gateway& gateway,
                         const TemplateIds& templates, CallLog& log) {
  if (token_index >= sentence.tokens.size()) throw std::out_of_range("token index out of range");
  const auto& token = sentence.tokens[token_index];

  MeaningPair pair;
  pair.token_index = token_index;
  pair.word = token.surface;
  pair.char_start = token.char_start;
  pair.char_end = token.char_end;

  log.step = "contextual-meaning";
  pair.contextual = gateway.ask(templates.contextual,
                                {{"word", token.surface}, {"sentence", sentence.text}},
                                log.digests).at("contextual");

  log.step = "basic-meaning";
  if (const auto it = dictionary.find(token.surface); it != dictionary.end()) {
    pair.basic = it->second;
    pair.basic_source = BasicSource::Dictionary;
  } else {
    pair.basic = gateway.ask(templates.basic, {{"word", token.surface}}, log.digests).at("basic");
    pair.basic_source = BasicSource::LlmEnumerated;
  }

  log.step = "meaning-contrast";
  if (pair.contextual == pair.basic) {
    pair.contrasts = false;
    pair.comprehensible = false;
    return pair;
  }
  const auto fields = gateway.ask(templates.contrast,
                                  {{"sentence", sentence.text},
                                   {"word", token.surface},
                                   {"contextual", pair.contextual},
                                   {"basic", pair.basic}},
                                  log.digests);
  pair.contrasts = fields.at("contrasts") == "yes";
  pair.comprehensible = fields.at("comprehensible") == "yes";
  if (const auto it = fields.find("implicit"); it != fields.end()) {
    if (it->second == "ellipsis") pair.implicit = ImplicitMetaphor::Ellipsis;
    if (it->second == "substitution") pair.implicit = ImplicitMetaphor::Substitution;
  }
  return pair;
}

engine::Label classify(const MeaningPair& pair) {
  return pair.contrasts.value_or(false) && pair.comprehensible.value_or(false)
             ? engine::Label::Metaphorical
             : engine::Label::Literal;
}

}  // namespace figura::protocols::mip
