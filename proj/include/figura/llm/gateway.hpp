#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "figura/llm/backend.hpp"
#include "figura/llm/cache.hpp"
#include "figura/llm/request.hpp"
#include "figura/llm/templates.hpp"

namespace figura::llm {

// Single entry point for constrained LLM subroutine calls. Live and stub
// responses are recorded into the cache (when one is attached) so that a later
// replay run reproduces them. Safe to call concurrently.
class Gateway {
 public:
  Gateway(std::shared_ptr<const TemplateRegistry> registry, std::shared_ptr<Backend> backend,
          std::shared_ptr<ResponseCache> cache = nullptr);

  LLMResponse call(const LLMRequest& request);

  // Builds the request for `template_id`, calls, and parses against the
  // template's schema. The digest is appended to `consumed` once a response
  // exists, so a later SchemaViolation still leaves it traceable.
  FieldMap ask(std::string_view template_id, SlotMap slots, std::vector<Digest>& consumed);

  const TemplateRegistry& registry() const noexcept { return *registry_; }
  BackendKind backend_kind() const noexcept { return backend_->kind(); }
  const std::shared_ptr<ResponseCache>& cache() const noexcept { return cache_; }

 private:
  std::shared_ptr<const TemplateRegistry> registry_;
  std::shared_ptr<Backend> backend_;
  std::shared_ptr<ResponseCache> cache_;
};

}  // namespace figura::llm
