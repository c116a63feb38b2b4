#include "figura/llm/errors.hpp"

namespace figura::llm {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::string describe(const std::string& schema_id, const SchemaViolation::Details& d) {
  std::string msg = "response violates schema '" + schema_id + "'";
  if (!d.missing.empty()) msg += "; missing: " + join(d.missing);
  if (!d.extra.empty()) msg += "; extra: " + join(d.extra);
  if (!d.malformed_lines.empty()) msg += "; malformed: " + join(d.malformed_lines);
  if (!d.invalid_values.empty()) msg += "; invalid: " + join(d.invalid_values);
  if (!d.note.empty()) msg += "; " + d.note;
  return msg;
}

}  // namespace

std::string_view to_string(GatewayErrorKind kind) {
  switch (kind) {
    case GatewayErrorKind::UnknownTemplate:
      return "unknown_template";
    case GatewayErrorKind::MissingSlot:
      return "missing_slot";
    case GatewayErrorKind::InvalidRequest:
      return "invalid_request";
    case GatewayErrorKind::CacheMiss:
      return "cache_miss";
    case GatewayErrorKind::FixtureMiss:
      return "fixture_miss";
    case GatewayErrorKind::TransportError:
      return "transport_error";
    case GatewayErrorKind::SchemaViolation:
      return "schema_violation";
  }
  return "unknown";
}

SchemaViolation::SchemaViolation(std::string schema_id, Details details,
                                 std::optional<Digest> digest)
    : GatewayError(GatewayErrorKind::SchemaViolation, describe(schema_id, details), digest),
      schema_id_(std::move(schema_id)),
      details_(std::move(details)) {}

}  // namespace figura::llm
