#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "figura/llm/digest.hpp"

namespace figura::llm {

enum class GatewayErrorKind {
  UnknownTemplate,
  MissingSlot,
  InvalidRequest,
  CacheMiss,
  FixtureMiss,
  TransportError,
  SchemaViolation,
};

std::string_view to_string(GatewayErrorKind kind);

class GatewayError : public std::runtime_error {
 public:
  GatewayError(GatewayErrorKind kind, const std::string& message,
               std::optional<Digest> digest = std::nullopt)
      : std::runtime_error(message), kind_(kind), digest_(digest) {}

  GatewayErrorKind kind() const noexcept { return kind_; }
  const std::optional<Digest>& digest() const noexcept { return digest_; }

 private:
  GatewayErrorKind kind_;
  std::optional<Digest> digest_;
};

class UnknownTemplate : public GatewayError {
 public:
  explicit UnknownTemplate(const std::string& id)
      : GatewayError(GatewayErrorKind::UnknownTemplate, "unknown template '" + id + "'") {}
};

class MissingSlot : public GatewayError {
 public:
  MissingSlot(const std::string& template_id, std::string slot)
      : GatewayError(GatewayErrorKind::MissingSlot,
                     "template '" + template_id + "' missing slot '" + slot + "'"),
        slot_(std::move(slot)) {}
  const std::string& slot() const noexcept { return slot_; }

 private:
  std::string slot_;
};

class CacheMiss : public GatewayError {
 public:
  explicit CacheMiss(const Digest& digest)
      : GatewayError(GatewayErrorKind::CacheMiss, "no cached response for " + digest.hex(),
                     digest) {}
};

class FixtureMiss : public GatewayError {
 public:
  FixtureMiss(const Digest& digest, const std::string& template_id)
      : GatewayError(GatewayErrorKind::FixtureMiss,
                     "no stub fixture for template '" + template_id + "' (" + digest.hex() + ")",
                     digest) {}
};

class TransportError : public GatewayError {
 public:
  TransportError(const std::string& message, std::optional<Digest> digest = std::nullopt)
      : GatewayError(GatewayErrorKind::TransportError, message, digest) {}
};

// The response did not follow the expected `name: value` format.
class SchemaViolation : public GatewayError {
 public:
  struct Details {
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    std::vector<std::string> malformed_lines;
    std::vector<std::string> invalid_values;
    std::string note;
  };

  SchemaViolation(std::string schema_id, Details details,
                  std::optional<Digest> digest = std::nullopt);

  const std::string& schema_id() const noexcept { return schema_id_; }
  const Details& details() const noexcept { return details_; }

 private:
  std::string schema_id_;
  Details details_;
};

}  // namespace figura::llm
