#pragma once

#include <span>
#include <string>
#include <string_view>

#include "figura/llm/gateway.hpp"
#include "figura/protocols/call_log.hpp"
#include "figura/protocols/types.hpp"

namespace figura::protocols {

// Asks for the domain label of `expression` in context. A label outside
// `taxonomy` is reported as a SchemaViolation.
DomainLabel label_domain(std::string_view sentence, std::string_view expression,
                         std::span<const DomainLabel> taxonomy, llm::Gateway& gateway,
                         const std::string& template_id, CallLog& log);

// SchemaViolation for a response that parsed but broke a structural rule.
[[noreturn]] void reject_response(const std::string& schema_id, std::string note,
                                  const CallLog& log);

}  // namespace figura::protocols
