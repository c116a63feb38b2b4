#include "figura/protocols/emotion.hpp"

#include "figura/llm/structured.hpp"
#include "figura/protocols/domains.hpp"
#include "figura/protocols/spans.hpp"
#include "figura/text/utf8.hpp"

namespace figura::protocols::emotion {

Valence sentence_valence(const text::Sentence& sentence, llm::Gateway& gateway,
                         const TemplateIds& templates, CallLog& log) {
  log.step = "sentence-valence";
  const auto v =
      gateway.ask(templates.valence, {{"sentence", sentence.text}}, log.digests).at("valence");
  return *parse_valence(v);  // the schema restricts the value set
}

ValenceAssessment assess_incongruity(const text::Sentence& sentence, Valence valence,
                                     llm::Gateway& gateway, const TemplateIds& templates,
                                     CallLog& log) {
  ValenceAssessment a;
  a.sentence_valence = valence;

  log.step = "valence-incongruity";
  const auto fields = gateway.ask(
      templates.incongruity,
      {{"sentence", sentence.text}, {"valence", std::string(to_string(valence))}}, log.digests);
  const auto& expression = fields.at("expression");
  if (llm::is_none(expression)) return a;

  const auto lit = fields.find("literal_valence");
  const auto fig = fields.find("figurative_valence");
  if (lit == fields.end() || fig == fields.end()) {
    reject_response("valence_incongruity",
                    "an incongruent expression needs literal_valence and figurative_valence", log);
  }
  const auto span = locate_avoiding(text::to_u32(sentence.text), expression);
  if (!span) {
    reject_response("valence_incongruity", "expression '" + expression + "' not in sentence", log);
  }
  a.incongruent_span = span;
  a.literal_valence = parse_valence(lit->second);
  a.figurative_valence = parse_valence(fig->second);

  log.step = "figurative-resolution";
  const auto resolved = gateway.ask(templates.resolution,
                                    {{"sentence", sentence.text},
                                     {"expression", span->text},
                                     {"literal_valence", lit->second},
                                     {"figurative_valence", fig->second}},
                                    log.digests);
  a.resolvable = resolved.at("resolvable") == "yes";
  return a;
}

ValenceAssessment assess_valence(const text::Sentence& sentence, llm::Gateway& gateway,
                                 const TemplateIds& templates, CallLog& log) {
  const auto v = sentence_valence(sentence, gateway, templates, log);
  return assess_incongruity(sentence, v, gateway, templates, log);
}

engine::Label classify(const ValenceAssessment& assessment) {
  return assessment.incongruent_span && assessment.resolvable ? engine::Label::Metaphorical
                                                              : engine::Label::Literal;
}

}  // namespace figura::protocols::emotion
