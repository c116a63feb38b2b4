#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "figura/llm/request.hpp"
#include "figura/llm/structured.hpp"

namespace figura::llm {

// Placeholders are `{slot_name}`; `{{` and `}}` produce literal braces.
struct PromptTemplate {
  std::string id;
  std::string text;
  std::string schema_id;
};

// Template ids used by the protocol scripts.
namespace templates {
inline constexpr std::string_view kContextualMeaning = "contextual_meaning";
inline constexpr std::string_view kBasicMeaning = "basic_meaning";
inline constexpr std::string_view kMeaningContrast = "meaning_contrast";
inline constexpr std::string_view kVehicle = "vehicle_identification";
inline constexpr std::string_view kTenor = "tenor_identification";
inline constexpr std::string_view kGround = "ground_extraction";
inline constexpr std::string_view kDomainLabel = "domain_label";
inline constexpr std::string_view kSentenceValence = "sentence_valence";
inline constexpr std::string_view kValenceIncongruity = "valence_incongruity";
inline constexpr std::string_view kFigurativeResolution = "figurative_resolution";
inline constexpr std::string_view kComparison = "comparison_extraction";
}  // namespace templates

class TemplateRegistry {
 public:
  // The built-in templates and schemas used by protocols A-D.
  static TemplateRegistry builtin();

  void add_schema(Schema schema);
  // A template id is immutable once registered: re-adding the same id with
  // different text or schema throws std::invalid_argument, since cached
  // responses are keyed by id rather than prompt text.
  void add_template(PromptTemplate tmpl);

  bool has_template(std::string_view id) const;
  const PromptTemplate& get_template(std::string_view id) const;  // UnknownTemplate
  const Schema& schema(std::string_view id) const;                // UnknownTemplate
  std::vector<std::string> slot_names(std::string_view template_id) const;

  // Builds a request with temperature 0 and the default token limit.
  LLMRequest make_request(std::string_view template_id, SlotMap slots) const;

  std::vector<std::string> template_ids() const;

 private:
  std::map<std::string, PromptTemplate, std::less<>> templates_;
  std::map<std::string, Schema, std::less<>> schemas_;
};

// Deterministic substitution; throws UnknownTemplate or MissingSlot.
std::string render_prompt(const TemplateRegistry& registry, std::string_view template_id,
                          const SlotMap& slots);

// Placeholder names in order of first appearance. Throws std::invalid_argument
// on an unterminated or empty placeholder.
std::vector<std::string> placeholders(std::string_view template_text);

// Checks a request against the registry: known template, every placeholder
// filled, schema matching the template, max_tokens > 0, temperature 0 unless
// `allow_nonzero_temperature`. Throws GatewayError.
void validate_request(const TemplateRegistry& registry, const LLMRequest& request,
                      bool allow_nonzero_temperature = false);

}  // namespace figura::llm
