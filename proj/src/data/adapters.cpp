#include "figura/data/adapters.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "figura/data/csv.hpp"
#include "figura/text/utf8.hpp"

namespace figura::data {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

GoldSpan locate_span(const std::string& text, SpanRole role, const std::string& surface) {
  GoldSpan span{role, std::nullopt, std::nullopt, surface};
  if (surface.empty()) return span;
  const auto t = text::to_u32(text);
  const auto s = text::to_u32(surface);
  const auto pos = t.find(s);
  if (pos != std::u32string::npos) {
    span.start = pos;
    span.end = pos + s.size();
  }
  return span;
}

GoldInstance finish(GoldInstance in, std::size_t record) {
  try {
    check_instance(in);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(record, ex.what());
  }
  return in;
}

std::vector<GoldInstance> import_psu(std::istream& in) {
  std::vector<GoldInstance> out;
  std::optional<GoldInstance> cur;
  std::size_t start_line = 0;
  std::string line;
  std::size_t lineno = 0;
  auto close = [&] {
    if (cur && cur->tokens && !cur->tokens->empty()) out.push_back(finish(std::move(*cur), start_line));
    cur.reset();
  };
  auto open = [&] {
    if (!cur) {
      cur = GoldInstance{};
      cur->tokens.emplace();
      start_line = lineno;
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      close();
      continue;
    }
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = trim(line.substr(1, eq - 1));
      const auto value = trim(line.substr(eq + 1));
      if (key == "id") {
        if (cur && !cur->tokens->empty()) close();
        open();
        cur->source_id = value;
      } else if (key == "register") {
        open();
        cur->register_name = value;
      } else if (key == "split") {
        open();
        cur->split = value;
      }
      continue;
    }
    open();
    const auto cols = split(line, '\t');
    if (cols.size() < 2 || cols[0].empty()) throw ParseError(lineno, "expected surface<TAB>label");
    const auto raw = trim(cols[1]);
    std::optional<TokenLabel> label = parse_token_label(raw);
    if (!label && raw == "M") label = TokenLabel::MRW;
    if (!label && (raw == "L" || raw == "O")) label = TokenLabel::Literal;
    if (!label) throw ParseError(lineno, "unknown token label '" + raw + "'");
    const auto start = text::length(cur->text);
    cur->text += cols[0];
    cur->tokens->push_back(GoldToken{cols[0], *label, start, start + text::length(cols[0])});
    if (cur->source_id.empty()) cur->source_id = "psu." + std::to_string(lineno);
  }
  close();
  return out;
}

std::optional<SentenceLabel> binary_label(const std::string& raw) {
  if (raw == "1" || raw == "metaphor") return SentenceLabel::Metaphor;
  if (raw == "0" || raw == "literal") return SentenceLabel::Literal;
  if (raw == "other") return SentenceLabel::Other;
  return std::nullopt;
}

std::vector<GoldInstance> import_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  try {
    rows = read_csv(in);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(0, ex.what());
  }
  if (rows.empty()) return {};
  const auto& header = rows.front();
  auto col = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  const auto id = col("id"), txt = col("text"), lab = col("label");
  if (!id || !txt || !lab) throw ParseError(1, "CSV header must contain id,text,label");
  const auto reg = col("register"), spl = col("split");
  std::vector<GoldInstance> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != header.size()) throw ParseError(r + 1, "wrong number of CSV fields");
    GoldInstance g;
    g.source_id = row[*id];
    g.text = row[*txt];
    g.sentence_label = binary_label(trim(row[*lab]));
    if (!g.sentence_label) throw ParseError(r + 1, "unknown label '" + row[*lab] + "'");
    if (reg && !row[*reg].empty()) g.register_name = row[*reg];
    if (spl && !row[*spl].empty()) g.split = row[*spl];
    out.push_back(finish(std::move(g), r + 1));
  }
  return out;
}

// JSON array or JSON lines.
std::vector<json> read_json_records(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  if (text[first] == '[') {
    try {
      return json::parse(text).get<std::vector<json>>();
    } catch (const json::exception& ex) {
      throw ParseError(1, std::string("malformed JSON: ") + ex.what());
    }
  }
  std::vector<json> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& ex) {
      throw ParseError(lineno, std::string("malformed JSON: ") + ex.what());
    }
  }
  return out;
}

std::string str_field(const json& j, const char* key, std::size_t record, bool required = true) {
  if (!j.contains(key) || j.at(key).is_null()) {
    if (required) throw ParseError(record, std::string("missing field '") + key + "'");
    return {};
  }
  if (j.at(key).is_string()) return j.at(key).get<std::string>();
  if (j.at(key).is_number()) return j.at(key).dump();
  throw ParseError(record, std::string("field '") + key + "' must be a string");
}

std::string text_of(const json& j, std::size_t record) {
  if (j.contains("text")) return str_field(j, "text", record);
  return str_field(j, "sentence", record);
}

std::vector<GoldInstance> import_span_json(std::istream& in, DatasetName name) {
  std::vector<GoldInstance> out;
  std::size_t record = 0;
  for (const auto& j : read_json_records(in)) {
    ++record;
    GoldInstance g;
    g.source_id = str_field(j, "id", record);
    g.text = text_of(j, record);
    g.sentence_label = SentenceLabel::Metaphor;
    g.spans.emplace();
    if (name == DatasetName::Cmdag) {
      g.spans->push_back(locate_span(g.text, SpanRole::Tenor, str_field(j, "tenor", record)));
      g.spans->push_back(locate_span(g.text, SpanRole::Vehicle, str_field(j, "vehicle", record)));
      const auto ground = str_field(j, "ground", record, false);
      if (!ground.empty()) g.spans->push_back(locate_span(g.text, SpanRole::Ground, ground));
    } else {
      g.spans->push_back(GoldSpan{SpanRole::SourceDomain, std::nullopt, std::nullopt,
                                  str_field(j, "source_domain", record)});
      g.spans->push_back(GoldSpan{SpanRole::TargetDomain, std::nullopt, std::nullopt,
                                  str_field(j, "target_domain", record)});
    }
    out.push_back(finish(std::move(g), record));
  }
  return out;
}

std::vector<GoldInstance> import_simile(std::istream& in) {
  std::vector<GoldInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (lineno == 1 && line.rfind("id\t", 0) == 0) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 5 && cols.size() != 3) {
      throw ParseError(lineno, "expected id<TAB>text<TAB>label<TAB>tenor<TAB>vehicle");
    }
    GoldInstance g;
    g.source_id = cols[0];
    g.text = cols[1];
    g.sentence_label = binary_label(trim(cols[2]));
    if (!g.sentence_label) throw ParseError(lineno, "unknown label '" + cols[2] + "'");
    g.spans.emplace();
    if (cols.size() == 5) {
      if (!cols[3].empty()) g.spans->push_back(locate_span(g.text, SpanRole::Tenor, cols[3]));
      if (!cols[4].empty()) g.spans->push_back(locate_span(g.text, SpanRole::Vehicle, cols[4]));
    }
    out.push_back(finish(std::move(g), lineno));
  }
  return out;
}

std::vector<GoldInstance> import_configure(std::istream& in) {
  std::vector<GoldInstance> out;
  std::size_t record = 0;
  for (const auto& j : read_json_records(in)) {
    ++record;
    GoldInstance g;
    g.source_id = str_field(j, "id", record);
    g.text = text_of(j, record);
    const auto figure = str_field(j, "figure", record);
    g.sentence_label = figure == "metaphor" ? SentenceLabel::Metaphor : SentenceLabel::Other;
    g.spans.emplace();
    const auto fragment = str_field(j, "fragment", record, false);
    if (!fragment.empty()) g.spans->push_back(locate_span(g.text, SpanRole::Figure, fragment));
    out.push_back(finish(std::move(g), record));
  }
  return out;
}

}  // namespace

std::vector<GoldInstance> import_native(DatasetName name, std::istream& in) {
  switch (name) {
    case DatasetName::PsuCmc:
      return import_psu(in);
    case DatasetName::Cmc:
    case DatasetName::ChineseMCorpus:
      return import_csv(in);
    case DatasetName::Cmdag:
    case DatasetName::Nlpcc2024T9:
      return import_span_json(in, name);
    case DatasetName::ChineseSimile:
      return import_simile(in);
    case DatasetName::Configure:
      return import_configure(in);
  }
  return {};
}

std::vector<GoldInstance> import_native(DatasetName name, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path.string());
  return import_native(name, in);
}

}  // namespace figura::data
