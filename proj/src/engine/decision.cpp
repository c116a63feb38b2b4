#include "figura/engine/decision.hpp"

namespace figura::engine {

using nlohmann::json;
using namespace figura::protocols;

std::string_view to_string(ProtocolId id) {
  switch (id) {
    case ProtocolId::A:
      return "A";
    case ProtocolId::B:
      return "B";
    case ProtocolId::C:
      return "C";
    case ProtocolId::D:
      return "D";
  }
  return "A";
}

std::optional<ProtocolId> parse_protocol_id(std::string_view name) {
  if (name == "A") return ProtocolId::A;
  if (name == "B") return ProtocolId::B;
  if (name == "C") return ProtocolId::C;
  if (name == "D") return ProtocolId::D;
  return std::nullopt;
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Metaphorical:
      return "METAPHORICAL";
    case Label::Literal:
      return "LITERAL";
    case Label::Abstain:
      return "ABSTAIN";
  }
  return "LITERAL";
}

std::optional<Label> parse_label(std::string_view name) {
  if (name == "METAPHORICAL") return Label::Metaphorical;
  if (name == "LITERAL") return Label::Literal;
  if (name == "ABSTAIN") return Label::Abstain;
  return std::nullopt;
}

std::string_view to_string(Confidence c) {
  switch (c) {
    case Confidence::High:
      return "high";
    case Confidence::Medium:
      return "medium";
    case Confidence::Low:
      return "low";
  }
  return "low";
}

bool evidence_matches(ProtocolId id, const Evidence& evidence) {
  return evidence.index() == static_cast<std::size_t>(id);
}

json to_json(const CharSpan& span) {
  return json{{"start", span.start}, {"end", span.end}, {"text", span.text}};
}

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return std::string(to_string(*v));
}

json optional_bool(const std::optional<bool>& v) {
  if (!v) return nullptr;
  return *v;
}

json pair_json(const MeaningPair& p) {
  return json{{"contextual", p.contextual},
              {"basic", p.basic},
              {"basic_source", to_string(p.basic_source)},
              {"contrasts", optional_bool(p.contrasts)},
              {"comprehensible", optional_bool(p.comprehensible)},
              {"implicit", to_string(p.implicit)}};
}

json triple_json(const ConceptTriple& t) {
  return json{{"tenor", to_json(t.tenor)},
              {"vehicle", to_json(t.vehicle)},
              {"ground", t.ground},
              {"tenor_domain", optional_json(t.tenor_domain)},
              {"vehicle_domain", optional_json(t.vehicle_domain)},
              {"coherent", optional_bool(t.coherent)}};
}

json assessment_json(const ValenceAssessment& a) {
  return json{{"sentence_valence", to_string(a.sentence_valence)},
              {"incongruent_span", a.incongruent_span ? to_json(*a.incongruent_span) : json(nullptr)},
              {"literal_valence", optional_json(a.literal_valence)},
              {"figurative_valence", optional_json(a.figurative_valence)},
              {"resolvable", a.resolvable}};
}

json construct_json(const ComparisonConstruct& c) {
  return json{{"marker", to_json(c.marker)},
              {"tenor", to_json(c.tenor)},
              {"vehicle", to_json(c.vehicle)},
              {"tenor_domain", optional_json(c.tenor_domain)},
              {"vehicle_domain", optional_json(c.vehicle_domain)},
              {"cross_domain", optional_bool(c.cross_domain)}};
}

struct EvidenceVisitor {
  json operator()(const MipEvidence& e) const {
    return json{{"type", "meaning_pair"},
                {"token_index", e.token_index},
                {"word", e.word},
                {"char_start", e.char_start},
                {"char_end", e.char_end},
                {"meaning_pair", e.pair ? pair_json(*e.pair) : json(nullptr)}};
  }
  json operator()(const ConceptEvidence& e) const {
    return json{{"type", "concept_triple"},
                {"triple", e.triple ? triple_json(*e.triple) : json(nullptr)}};
  }
  json operator()(const EmotionEvidence& e) const {
    return json{{"type", "valence_assessment"},
                {"assessment", e.assessment ? assessment_json(*e.assessment) : json(nullptr)}};
  }
  json operator()(const SimileEvidence& e) const {
    json markers = json::array();
    for (const auto& m : e.markers) markers.push_back(to_json(m));
    json constructs = json::array();
    for (const auto& c : e.constructs) constructs.push_back(construct_json(c));
    return json{{"type", "comparison"}, {"markers", markers}, {"constructs", constructs}};
  }
};

}  // namespace

json evidence_to_json(const Rationale& rationale) {
  json j = std::visit(EvidenceVisitor{}, rationale.evidence);
  j["summary"] = rationale.summary;
  if (!rationale.annotations.empty()) j["annotations"] = rationale.annotations;
  if (rationale.failure) {
    const auto& f = *rationale.failure;
    j["error"] = json{{"step", f.step},
                      {"kind", f.kind},
                      {"detail", f.detail},
                      {"digest", f.digest ? json(*f.digest) : json(nullptr)}};
  }
  return j;
}

}  // namespace figura::engine
