#pragma once

#include "figura/engine/decision.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/protocols/call_log.hpp"
#include "figura/protocols/stage_templates.hpp"
#include "figura/protocols/types.hpp"
#include "figura/text/token.hpp"

// Protocol C: emotional-valence incongruity.
namespace figura::protocols::emotion {

Valence sentence_valence(const text::Sentence& sentence, llm::Gateway& gateway,
                         const TemplateIds& templates, CallLog& log);

// Incongruity and resolution calls given the sentence valence. The resolution
// call only runs when an incongruent expression was found.
ValenceAssessment assess_incongruity(const text::Sentence& sentence, Valence valence,
                                     llm::Gateway& gateway, const TemplateIds& templates,
                                     CallLog& log);

// sentence_valence followed by assess_incongruity.
ValenceAssessment assess_valence(const text::Sentence& sentence, llm::Gateway& gateway,
                                 const TemplateIds& templates, CallLog& log);

// METAPHORICAL iff an incongruent span exists and is resolvable.
engine::Label classify(const ValenceAssessment& assessment);

}  // namespace figura::protocols::emotion
