#include "figura/protocols/domains.hpp"

#include <algorithm>

#include "figura/llm/errors.hpp"

namespace figura::protocols {

void reject_response(const std::string& schema_id, std::string note, const CallLog& log) {
  llm::SchemaViolation::Details details;
  details.note = std::move(note);
  std::optional<llm::Digest> digest;
  if (!log.digests.empty()) digest = log.digests.back();
  throw llm::SchemaViolation(schema_id, std::move(details), digest);
}

DomainLabel label_domain(std::string_view sentence, std::string_view expression,
                         std::span<const DomainLabel> taxonomy, llm::Gateway& gateway,
                         const std::string& template_id, CallLog& log) {
  const auto fields = gateway.ask(
      template_id, {{"sentence", std::string(sentence)}, {"expression", std::string(expression)}},
      log.digests);
  const auto label = parse_domain(fields.at("domain"));
  if (!label || std::find(taxonomy.begin(), taxonomy.end(), *label) == taxonomy.end()) {
    reject_response(gateway.registry().get_template(template_id).schema_id,
                    "domain '" + fields.at("domain") + "' is outside the configured taxonomy", log);
  }
  return *label;
}

}  // namespace figura::protocols
