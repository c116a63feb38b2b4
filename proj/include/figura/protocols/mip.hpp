#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "figura/engine/decision.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/protocols/call_log.hpp"
#include "figura/protocols/stage_templates.hpp"
#include "figura/protocols/types.hpp"
#include "figura/text/token.hpp"

// Protocol A: token-level MIP.
namespace figura::protocols::mip {

using Dictionary = std::map<std::string, std::string>;

inline constexpr text::PosTag kContentTags[] = {text::PosTag::Noun, text::PosTag::Verb,
                                                text::PosTag::Adj, text::PosTag::Adv};

// Indices of tokens whose POS is in `pos_set`, in order.
std::vector<std::size_t> select_candidates(const text::Sentence& sentence,
                                           std::span<const text::PosTag> pos_set = kContentTags);

// Contextual meaning, then basic meaning (dictionary first, LLM otherwise),
// then the contrast/comparison judgement. When the two meanings are identical
// strings the contrast call is skipped and both flags are false.
// Throws llm::GatewayError; log.step names the failing call.
MeaningPair analyze_word(const text::Sentence& sentence, std::size_t token_index,
                         const Dictionary& dictionary, llm::Gateway& gateway,
                         const TemplateIds& templates, CallLog& log);

// METAPHORICAL iff contrasts and comprehensible.
engine::Label classify(const MeaningPair& pair);

}  // namespace figura::protocols::mip
