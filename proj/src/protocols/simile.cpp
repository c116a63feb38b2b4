#include "figura/protocols/simile.hpp"

#include "figura/llm/structured.hpp"
#include "figura/protocols/domains.hpp"
#include "figura/protocols/spans.hpp"
#include "figura/text/utf8.hpp"

namespace figura::protocols::simile {

std::vector<CharSpan> detect_markers(std::string_view sentence_text,
                                     std::span<const std::string> markers) {
  const auto text = text::to_u32(sentence_text);
  std::vector<std::pair<std::u32string, std::string>> lex;
  for (const auto& m : markers) {
    if (!m.empty()) lex.emplace_back(text::to_u32(m), m);
  }
  std::vector<CharSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::pair<std::u32string, std::string>* best = nullptr;
    for (const auto& entry : lex) {
      const auto& m = entry.first;
      if (m.size() <= text.size() - i && text.compare(i, m.size(), m) == 0 &&
          (!best || m.size() > best->first.size())) {
        best = &entry;
      }
    }
    if (best) {
      out.push_back(CharSpan{i, i + best->first.size(), best->second});
      i += best->first.size();
    } else {
      ++i;
    }
  }
  return out;
}

namespace {

CharSpan place(std::u32string_view text, const std::string& surface, const CharSpan& marker,
               bool prefer_after, std::string_view role, const CallLog& log) {
  bool overlapped = false;
  const auto span = locate_around(text, surface, marker, prefer_after, &overlapped);
  if (!span) {
    reject_response("comparison_extraction",
                    std::string(role) + " '" + surface +
                        (overlapped ? "' overlaps the marker" : "' not in sentence"),
                    log);
  }
  return *span;
}

}  // namespace

std::optional<ComparisonConstruct> extract_comparison(const text::Sentence& sentence,
                                                      const CharSpan& marker,
                                                      llm::Gateway& gateway,
                                                      const TemplateIds& templates, CallLog& log) {
  log.step = "comparison-extraction";
  const auto fields = gateway.ask(templates.comparison,
                                  {{"sentence", sentence.text}, {"marker", marker.text}},
                                  log.digests);
  const auto& tenor = fields.at("tenor");
  const auto& vehicle = fields.at("vehicle");
  if (llm::is_none(tenor) || llm::is_none(vehicle)) return std::nullopt;

  const auto text = text::to_u32(sentence.text);
  ComparisonConstruct c;
  c.marker = marker;
  c.tenor = place(text, tenor, marker, false, "tenor", log);
  c.vehicle = place(text, vehicle, marker, true, "vehicle", log);
  return c;
}

ComparisonConstruct check_cross_domain(const text::Sentence& sentence,
                                       ComparisonConstruct construct,
                                       std::span<const DomainLabel> taxonomy,
                                       llm::Gateway& gateway, const TemplateIds& templates,
                                       CallLog& log) {
  log.step = "cross-domain-check";
  construct.tenor_domain =
      label_domain(sentence.text, construct.tenor.text, taxonomy, gateway, templates.domain, log);
  construct.vehicle_domain =
      label_domain(sentence.text, construct.vehicle.text, taxonomy, gateway, templates.domain, log);
  construct.cross_domain = *construct.tenor_domain != *construct.vehicle_domain;
  return construct;
}

engine::Label classify(const ComparisonConstruct& construct) {
  return construct.cross_domain.value_or(false) ? engine::Label::Metaphorical
                                                : engine::Label::Literal;
}

}  // namespace figura::protocols::simile
