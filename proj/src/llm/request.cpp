#include "figura/llm/request.hpp"

#include <array>
#include <charconv>
#include <cstdint>

namespace figura::llm {

namespace {

constexpr std::string_view kEncodingTag = "figura.llm-request.v1";

void put_field(std::string& out, std::string_view field) {
  const auto n = static_cast<std::uint64_t>(field.size());
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((n >> shift) & 0xFF));
  }
  out.append(field);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Live:
      return "live";
    case BackendKind::Replay:
      return "replay";
    case BackendKind::Stub:
      return "stub";
  }
  return "stub";
}

std::optional<BackendKind> parse_backend_kind(std::string_view name) {
  if (name == "live") return BackendKind::Live;
  if (name == "replay") return BackendKind::Replay;
  if (name == "stub") return BackendKind::Stub;
  return std::nullopt;
}

std::string canonical_encoding(const LLMRequest& request) {
  std::string out;
  put_field(out, kEncodingTag);
  put_field(out, request.template_id);
  put_field(out, std::to_string(request.slots.size()));
  for (const auto& [name, value] : request.slots) {
    put_field(out, name);
    put_field(out, value);
  }
  put_field(out, format_double(request.temperature));
  put_field(out, std::to_string(request.max_tokens));
  put_field(out, request.schema_id);
  return out;
}

Digest cache_key(const LLMRequest& request) { return sha256(canonical_encoding(request)); }

}  // namespace figura::llm
