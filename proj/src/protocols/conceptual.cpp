#include "figura/protocols/conceptual.hpp"

#include "figura/llm/structured.hpp"
#include "figura/protocols/domains.hpp"
#include "figura/protocols/spans.hpp"
#include "figura/text/utf8.hpp"

namespace figura::protocols::conceptual {

std::optional<CharSpan> identify_vehicle(const text::Sentence& sentence, llm::Gateway& gateway,
                                         const TemplateIds& templates, CallLog& log) {
  log.step = "vehicle-identification";
  const auto vehicle =
      gateway.ask(templates.vehicle, {{"sentence", sentence.text}}, log.digests).at("vehicle");
  if (llm::is_none(vehicle)) return std::nullopt;
  auto span = locate_avoiding(text::to_u32(sentence.text), vehicle);
  if (!span) reject_response("vehicle_identification", "vehicle '" + vehicle + "' not in sentence", log);
  return span;
}

std::optional<ConceptTriple> complete_triple(const text::Sentence& sentence,
                                             const CharSpan& vehicle,
                                             std::span<const DomainLabel> taxonomy,
                                             llm::Gateway& gateway, const TemplateIds& templates,
                                             CallLog& log) {
  const auto u32 = text::to_u32(sentence.text);

  log.step = "tenor-identification";
  const auto tenor_text = gateway.ask(templates.tenor,
                                      {{"sentence", sentence.text}, {"vehicle", vehicle.text}},
                                      log.digests).at("tenor");
  if (llm::is_none(tenor_text)) return std::nullopt;
  const auto tenor = locate_avoiding(u32, tenor_text, vehicle);
  if (!tenor) reject_response("tenor_identification", "tenor '" + tenor_text + "' not in sentence", log);

  ConceptTriple triple;
  triple.tenor = *tenor;
  triple.vehicle = vehicle;

  log.step = "ground-extraction";
  const auto ground = gateway.ask(templates.ground,
                                  {{"sentence", sentence.text},
                                   {"tenor", tenor->text},
                                   {"vehicle", vehicle.text}},
                                  log.digests).at("ground");
  triple.ground = llm::is_none(ground) ? std::string() : ground;

  log.step = "domain-labelling";
  triple.tenor_domain =
      label_domain(sentence.text, tenor->text, taxonomy, gateway, templates.domain, log);
  triple.vehicle_domain =
      label_domain(sentence.text, vehicle.text, taxonomy, gateway, templates.domain, log);
  return triple;
}

std::optional<ConceptTriple> extract_triple(const text::Sentence& sentence,
                                            std::span<const DomainLabel> taxonomy,
                                            llm::Gateway& gateway, const TemplateIds& templates,
                                            CallLog& log) {
  const auto vehicle = identify_vehicle(sentence, gateway, templates, log);
  if (!vehicle) return std::nullopt;
  return complete_triple(sentence, *vehicle, taxonomy, gateway, templates, log);
}

ConceptTriple validate_triple(ConceptTriple triple) {
  triple.coherent = !triple.ground.empty() && triple.tenor_domain && triple.vehicle_domain &&
                    *triple.tenor_domain != *triple.vehicle_domain &&
                    !triple.tenor.overlaps(triple.vehicle);
  return triple;
}

engine::Label classify(const std::optional<ConceptTriple>& triple) {
  return triple && triple->coherent.value_or(false) ? engine::Label::Metaphorical
                                                    : engine::Label::Literal;
}

}  // namespace figura::protocols::conceptual
