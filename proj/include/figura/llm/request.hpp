#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "figura/llm/digest.hpp"

namespace figura::llm {

using SlotMap = std::map<std::string, std::string>;
using FieldMap = std::map<std::string, std::string>;

inline constexpr int kDefaultMaxTokens = 2048;

struct LLMRequest {
  std::string template_id;
  SlotMap slots;
  double temperature = 0.0;
  int max_tokens = kDefaultMaxTokens;
  std::string schema_id;

  bool operator==(const LLMRequest&) const = default;
};

enum class BackendKind { Live, Replay, Stub };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend_kind(std::string_view name);

struct LLMResponse {
  std::string raw_text;
  std::optional<FieldMap> parsed;
  BackendKind backend = BackendKind::Stub;
  Digest digest;
};

// Length-prefixed (u64 big-endian) UTF-8 fields in fixed order: format tag,
// template_id, slot count, slot name/value pairs in name order, temperature
// (shortest round-trip decimal), max_tokens, schema_id.
std::string canonical_encoding(const LLMRequest& request);

// SHA-256 of canonical_encoding.
Digest cache_key(const LLMRequest& request);

}  // namespace figura::llm
