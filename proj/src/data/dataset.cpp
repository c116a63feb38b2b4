#include "figura/data/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace figura::data {

using nlohmann::json;

namespace {

struct NameInfo {
  DatasetName name;
  std::string_view id;
  std::string_view display;
  LabelType type;
};

constexpr NameInfo kNames[] = {
    {DatasetName::PsuCmc, "PSU_CMC", "PSU CMC", LabelType::Token},
    {DatasetName::Cmc, "CMC", "CMC", LabelType::Sentence},
    {DatasetName::Cmdag, "CMDAG", "CMDAG", LabelType::Span},
    {DatasetName::ChineseSimile, "CHINESE_SIMILE", "Chinese Simile", LabelType::Span},
    {DatasetName::Nlpcc2024T9, "NLPCC2024_T9", "NLPCC 2024 T9", LabelType::Span},
    {DatasetName::Configure, "CONFIGURE", "ConFiguRe", LabelType::Span},
    {DatasetName::ChineseMCorpus, "CHINESE_MCORPUS", "ChineseMCorpus", LabelType::Sentence},
};

const NameInfo& info(DatasetName name) {
  for (const auto& i : kNames) {
    if (i.name == name) return i;
  }
  return kNames[0];
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

std::string_view to_string(DatasetName name) { return info(name).id; }
std::string_view display_name(DatasetName name) { return info(name).display; }
LabelType label_type_of(DatasetName name) { return info(name).type; }

std::optional<DatasetName> parse_dataset_name(std::string_view s) {
  for (const auto& i : kNames) {
    if (i.id == s) return i.name;
  }
  return std::nullopt;
}

SchemaMismatch::SchemaMismatch(DatasetName name, std::size_t line, std::vector<std::string> found)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(name)) +
                         " expects " + std::string(to_string(label_type_of(name))) +
                         " labels, found fields [" + join(found) + "]"),
      name_(name),
      line_(line),
      found_(std::move(found)) {}

namespace {

std::vector<GoldInstance> read_lines(std::istream& in, std::optional<DatasetName> expect) {
  std::vector<GoldInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw ParseError(lineno, std::string("malformed JSON: ") + ex.what());
    }
    if (expect && j.is_object()) {
      const LabelType want = label_type_of(*expect);
      const bool has_tokens = j.contains("tokens");
      const bool has_label = j.contains("sentence_label");
      const bool has_spans = j.contains("spans");
      const bool ok = want == LabelType::Token      ? has_tokens && !has_label && !has_spans
                      : want == LabelType::Sentence ? has_label && !has_tokens && !has_spans
                                                    : has_label && has_spans && !has_tokens;
      if (!ok) {
        std::vector<std::string> found;
        for (const auto& [k, _] : j.items()) found.push_back(k);
        throw SchemaMismatch(*expect, lineno, std::move(found));
      }
    }
    try {
      out.push_back(instance_from_json(j));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(lineno, ex.what());
    } catch (const json::exception& ex) {
      throw ParseError(lineno, ex.what());
    }
  }
  return out;
}

}  // namespace

std::vector<GoldInstance> load_unified(std::istream& in, DatasetName name) {
  return read_lines(in, name);
}

std::vector<GoldInstance> load(const DatasetDescriptor& descriptor) {
  std::ifstream in(descriptor.path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read dataset " + descriptor.path.string());
  return read_lines(in, descriptor.name);
}

std::vector<GoldInstance> load_any(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read dataset " + path.string());
  return read_lines(in, std::nullopt);
}

void write_unified(std::ostream& out, const std::vector<GoldInstance>& instances) {
  for (const auto& in : instances) out << to_json(in).dump() << '\n';
}

void write_unified(const std::filesystem::path& path, const std::vector<GoldInstance>& instances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  write_unified(out, instances);
}

DatasetStats stats(const std::vector<GoldInstance>& instances) {
  DatasetStats s;
  if (instances.empty()) return s;
  const bool token_level = instances.front().label_type() == LabelType::Token;
  for (const auto& in : instances) {
    if ((in.label_type() == LabelType::Token) != token_level) {
      throw std::invalid_argument("stats needs instances of one label type");
    }
    if (token_level) {
      for (const auto& t : *in.tokens) {
        switch (t.label) {
          case TokenLabel::MRW:
            ++s.metaphor;
            break;
          case TokenLabel::Literal:
            ++s.literal;
            break;
          case TokenLabel::MFlag:
            ++s.other;
            break;
        }
      }
    } else {
      switch (*in.sentence_label) {
        case SentenceLabel::Metaphor:
          ++s.metaphor;
          break;
        case SentenceLabel::Literal:
          ++s.literal;
          break;
        case SentenceLabel::Other:
          ++s.other;
          break;
      }
    }
  }
  s.total = s.metaphor + s.literal + s.other;
  s.metaphor_pct = s.total == 0 ? 0.0 : static_cast<double>(s.metaphor) / static_cast<double>(s.total);
  return s;
}

const std::array<ReferenceRow, 7>& reference_rows() {
  static const std::array<ReferenceRow, 7> rows = {{
      {DatasetName::PsuCmc, 35745, 3272, 32432, 41, 9.2},
      {DatasetName::Cmc, 8027, 7312, 715, 0, 91.1},
      {DatasetName::Cmdag, 34463, 34463, 0, 0, 100.0},
      {DatasetName::ChineseSimile, 334069, 144358, 189711, 0, 43.2},
      {DatasetName::Nlpcc2024T9, 35463, 35463, 0, 0, 100.0},
      {DatasetName::Configure, 9010, 4354, 0, 4656, 48.3},
      {DatasetName::ChineseMCorpus, 745, 480, 265, 0, 64.4},
  }};
  return rows;
}

const ReferenceRow& reference_row(DatasetName name) {
  for (const auto& r : reference_rows()) {
    if (r.name == name) return r;
  }
  return reference_rows().front();
}

bool matches_reference(const DatasetStats& s, const ReferenceRow& row) {
  const double pct = std::round(s.metaphor_pct * 1000.0) / 10.0;
  return s.total == row.total && s.metaphor == row.metaphor && s.literal == row.literal &&
         s.other == row.other && std::abs(pct - row.metaphor_pct_rounded) < 0.05;
}

std::vector<GoldInstance> to_sentence_level(const std::vector<GoldInstance>& token_instances) {
  std::vector<GoldInstance> out;
  out.reserve(token_instances.size());
  for (const auto& in : token_instances) {
    if (!in.tokens) {
      throw std::invalid_argument("to_sentence_level needs token-labelled input (" + in.source_id + ")");
    }
    GoldInstance s = in;
    bool any = false;
    for (const auto& t : *in.tokens) any = any || t.label == TokenLabel::MRW;
    s.tokens.reset();
    s.sentence_label = any ? SentenceLabel::Metaphor : SentenceLabel::Literal;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace figura::data
