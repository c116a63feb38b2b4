#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "figura/engine/decision.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/protocols/call_log.hpp"
#include "figura/protocols/stage_templates.hpp"
#include "figura/protocols/types.hpp"
#include "figura/text/token.hpp"

// Protocol D: simile markers plus a cross-domain check.
namespace figura::protocols::simile {

// Non-overlapping marker occurrences scanned left to right; at each position
// the longest matching marker wins.
std::vector<CharSpan> detect_markers(std::string_view sentence_text,
                                     std::span<const std::string> markers);

// Tenor and vehicle for one marker. nullopt when the model reports that the
// marker does not introduce a comparison (either side NONE). A side that is
// missing from the sentence or only occurs overlapping the marker is a
// SchemaViolation. cross_domain stays unset.
std::optional<ComparisonConstruct> extract_comparison(const text::Sentence& sentence,
                                                      const CharSpan& marker,
                                                      llm::Gateway& gateway,
                                                      const TemplateIds& templates, CallLog& log);

// Labels both sides and sets cross_domain = (tenor_domain != vehicle_domain).
ComparisonConstruct check_cross_domain(const text::Sentence& sentence,
                                       ComparisonConstruct construct,
                                       std::span<const DomainLabel> taxonomy,
                                       llm::Gateway& gateway, const TemplateIds& templates,
                                       CallLog& log);

// METAPHORICAL iff cross_domain.
engine::Label classify(const ComparisonConstruct& construct);

}  // namespace figura::protocols::simile
