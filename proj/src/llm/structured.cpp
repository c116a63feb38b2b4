#include "figura/llm/structured.hpp"

#include <algorithm>
#include <set>

#include "figura/llm/errors.hpp"

namespace figura::llm {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_field_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
  });
}

}  // namespace

const FieldSpec* Schema::field(std::string_view name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

FieldMap parse_structured(std::string_view response_text, const Schema& schema) {
  static constexpr std::string_view kWideColon = "\xEF\xBC\x9A";  // U+FF1A

  FieldMap out;
  SchemaViolation::Details problems;
  std::size_t pos = 0;
  while (pos <= response_text.size()) {
    auto eol = response_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = response_text.size();
    const std::string_view line = trim(response_text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;

    std::size_t sep = line.find(':');
    std::size_t sep_len = 1;
    const std::size_t wide = line.find(kWideColon);
    if (wide != std::string_view::npos && (sep == std::string_view::npos || wide < sep)) {
      sep = wide;
      sep_len = kWideColon.size();
    }
    const std::string_view name = sep == std::string_view::npos ? "" : trim(line.substr(0, sep));
    if (!is_field_name(name)) {
      problems.malformed_lines.emplace_back(line);
      continue;
    }
    const std::string_view value = trim(line.substr(sep + sep_len));
    const FieldSpec* spec = schema.field(name);
    if (spec == nullptr) {
      problems.extra.emplace_back(name);
      continue;
    }
    if (!spec->allowed.empty() &&
        std::find(spec->allowed.begin(), spec->allowed.end(), value) == spec->allowed.end()) {
      problems.invalid_values.push_back(std::string(name) + "=" + std::string(value));
      continue;
    }
    if (!out.emplace(std::string(name), std::string(value)).second) {
      problems.note = "duplicate field '" + std::string(name) + "'";
    }
  }
  for (const auto& f : schema.fields) {
    if (f.required && !out.contains(f.name) &&
        std::none_of(problems.invalid_values.begin(), problems.invalid_values.end(),
                     [&](const std::string& v) { return v.rfind(f.name + "=", 0) == 0; })) {
      problems.missing.push_back(f.name);
    }
  }
  if (!problems.missing.empty() || !problems.extra.empty() || !problems.malformed_lines.empty() ||
      !problems.invalid_values.empty() || !problems.note.empty()) {
    throw SchemaViolation(schema.id, std::move(problems));
  }
  return out;
}

std::string render_structured(const FieldMap& fields) {
  std::string out;
  for (const auto& [name, value] : fields) {
    out += name;
    out += ": ";
    out += value;
    out += '\n';
  }
  return out;
}

bool is_none(std::string_view value) {
  value = trim(value);
  return value.empty() || value == "NONE" || value == "none" || value == "\xE6\x97\xA0";
}

}  // namespace figura::llm
