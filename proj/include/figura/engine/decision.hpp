#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "figura/llm/digest.hpp"
#include "figura/protocols/types.hpp"
#include "json.hpp"

namespace figura::engine {

enum class ProtocolId { A, B, C, D };

std::string_view to_string(ProtocolId id);
std::optional<ProtocolId> parse_protocol_id(std::string_view name);

enum class Label { Metaphorical, Literal, Abstain };
enum class Granularity { Token, Sentence };
enum class Confidence { High, Medium, Low };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view name);
std::string_view to_string(Confidence c);

// Token granularity is used by protocol A only; token_index is set exactly then.
struct Decision {
  Label label = Label::Literal;
  Granularity granularity = Granularity::Sentence;
  std::string source_id;
  std::optional<std::size_t> token_index;

  bool operator==(const Decision&) const = default;
};

// Why an instance was abstained on: the gateway call that failed.
struct GatewayFailure {
  std::string step;
  std::string kind;
  std::string detail;
  std::optional<std::string> digest;

  bool operator==(const GatewayFailure&) const = default;
};

struct MipEvidence {
  std::size_t token_index = 0;
  std::string word;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::optional<protocols::MeaningPair> pair;
};

struct ConceptEvidence {
  std::optional<protocols::ConceptTriple> triple;
};

struct EmotionEvidence {
  std::optional<protocols::ValenceAssessment> assessment;
};

struct SimileEvidence {
  std::vector<protocols::CharSpan> markers;
  std::vector<protocols::ComparisonConstruct> constructs;
};

// Alternative index follows ProtocolId order.
using Evidence = std::variant<MipEvidence, ConceptEvidence, EmotionEvidence, SimileEvidence>;

struct Rationale {
  std::string triggering_step;
  Evidence evidence;
  std::string summary;
  Confidence confidence = Confidence::Medium;
  std::optional<GatewayFailure> failure;
  std::vector<std::string> annotations;
  std::vector<llm::Digest> llm_digests;
};

bool evidence_matches(ProtocolId id, const Evidence& evidence);

nlohmann::json to_json(const protocols::CharSpan& span);
nlohmann::json evidence_to_json(const Rationale& rationale);

}  // namespace figura::engine
