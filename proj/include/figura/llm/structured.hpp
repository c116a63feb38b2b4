#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "figura/llm/request.hpp"

namespace figura::llm {

struct FieldSpec {
  std::string name;
  bool required = true;
  // Empty means free text.
  std::vector<std::string> allowed;
};

struct Schema {
  std::string id;
  std::vector<FieldSpec> fields;

  const FieldSpec* field(std::string_view name) const;
};

// Parses one `name: value` pair per line (ASCII name, single-line value; a
// full-width colon is accepted as separator). Blank lines are skipped. Throws
// SchemaViolation on malformed lines, duplicate or unknown names, missing
// required fields, or values outside a field's allowed set.
FieldMap parse_structured(std::string_view response_text, const Schema& schema);

// Inverse of parse_structured for maps whose values are single-line.
std::string render_structured(const FieldMap& fields);

// "NONE", "无" and the empty string all mean "nothing identified".
bool is_none(std::string_view value);

}  // namespace figura::llm
