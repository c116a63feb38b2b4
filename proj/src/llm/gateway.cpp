#include "figura/llm/gateway.hpp"

#include <stdexcept>

#include "figura/llm/errors.hpp"
#include "figura/llm/structured.hpp"

namespace figura::llm {

Gateway::Gateway(std::shared_ptr<const TemplateRegistry> registry, std::shared_ptr<Backend> backend,
                 std::shared_ptr<ResponseCache> cache)
    : registry_(std::move(registry)), backend_(std::move(backend)), cache_(std::move(cache)) {
  if (!registry_ || !backend_) throw std::invalid_argument("gateway needs a registry and a backend");
}

LLMResponse Gateway::call(const LLMRequest& request) {
  validate_request(*registry_, request);
  const Digest digest = cache_key(request);
  const std::string prompt = render_prompt(*registry_, request.template_id, request.slots);

  LLMResponse response;
  response.backend = backend_->kind();
  response.digest = digest;
  response.raw_text = backend_->complete(request, digest, prompt);
  if (cache_ && backend_->kind() != BackendKind::Replay) cache_->record(request, response.raw_text);

  try {
    response.parsed = parse_structured(response.raw_text, registry_->schema(request.schema_id));
  } catch (const SchemaViolation&) {
    response.parsed.reset();
  }
  return response;
}

FieldMap Gateway::ask(std::string_view template_id, SlotMap slots, std::vector<Digest>& consumed) {
  const LLMRequest request = registry_->make_request(template_id, std::move(slots));
  const LLMResponse response = call(request);
  consumed.push_back(response.digest);
  if (response.parsed) return *response.parsed;
  try {
    parse_structured(response.raw_text, registry_->schema(request.schema_id));
  } catch (const SchemaViolation& violation) {
    throw SchemaViolation(violation.schema_id(), violation.details(), response.digest);
  }
  throw SchemaViolation(request.schema_id, {}, response.digest);
}

}  // namespace figura::llm
