#pragma once

#include <optional>
#include <span>

#include "figura/engine/decision.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/protocols/call_log.hpp"
#include "figura/protocols/stage_templates.hpp"
#include "figura/protocols/types.hpp"
#include "figura/text/token.hpp"

// Protocol B: tenor-vehicle-ground extraction.
namespace figura::protocols::conceptual {

// Candidate vehicle located in the sentence, or nullopt when the model names
// none. A vehicle that is not a substring of the sentence is a SchemaViolation.
std::optional<CharSpan> identify_vehicle(const text::Sentence& sentence, llm::Gateway& gateway,
                                         const TemplateIds& templates, CallLog& log);

// Tenor, ground and both domain labels for a located vehicle. Returns nullopt
// when no tenor is named. An implicit ground is stored as "".
std::optional<ConceptTriple> complete_triple(const text::Sentence& sentence,
                                             const CharSpan& vehicle,
                                             std::span<const DomainLabel> taxonomy,
                                             llm::Gateway& gateway, const TemplateIds& templates,
                                             CallLog& log);

// identify_vehicle followed by complete_triple.
std::optional<ConceptTriple> extract_triple(const text::Sentence& sentence,
                                            std::span<const DomainLabel> taxonomy,
                                            llm::Gateway& gateway, const TemplateIds& templates,
                                            CallLog& log);

// coherent = non-empty ground, distinct domains, non-overlapping spans.
ConceptTriple validate_triple(ConceptTriple triple);

// METAPHORICAL iff a triple is present and coherent.
engine::Label classify(const std::optional<ConceptTriple>& triple);

}  // namespace figura::protocols::conceptual
