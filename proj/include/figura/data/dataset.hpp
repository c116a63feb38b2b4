#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "figura/data/instance.hpp"

namespace figura::data {

enum class DatasetName {
  PsuCmc,
  Cmc,
  Cmdag,
  ChineseSimile,
  Nlpcc2024T9,
  Configure,
  ChineseMCorpus,
};

inline constexpr std::array<DatasetName, 7> kAllDatasets = {
    DatasetName::PsuCmc,      DatasetName::Cmc,       DatasetName::Cmdag,
    DatasetName::ChineseSimile, DatasetName::Nlpcc2024T9, DatasetName::Configure,
    DatasetName::ChineseMCorpus};

std::string_view to_string(DatasetName name);  // "PSU_CMC", "CMC", ...
std::string_view display_name(DatasetName name);  // "PSU CMC", "Chinese Simile", ...
std::optional<DatasetName> parse_dataset_name(std::string_view s);
LabelType label_type_of(DatasetName name);

struct DatasetDescriptor {
  DatasetName name = DatasetName::PsuCmc;
  std::filesystem::path path;

  LabelType label_type() const { return label_type_of(name); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class SchemaMismatch : public std::runtime_error {
 public:
  SchemaMismatch(DatasetName name, std::size_t line, std::vector<std::string> found_fields);
  DatasetName dataset() const noexcept { return name_; }
  std::size_t line() const noexcept { return line_; }
  const std::vector<std::string>& found_fields() const noexcept { return found_; }

 private:
  DatasetName name_;
  std::size_t line_;
  std::vector<std::string> found_;
};

// Reads a unified JSON-lines file. Blank lines are skipped; order is kept.
// Every instance must carry exactly the labels of the descriptor's label type.
std::vector<GoldInstance> load(const DatasetDescriptor& descriptor);
std::vector<GoldInstance> load_unified(std::istream& in, DatasetName name);

// No label-type check: any valid unified instance is accepted.
std::vector<GoldInstance> load_any(const std::filesystem::path& path);

void write_unified(std::ostream& out, const std::vector<GoldInstance>& instances);
void write_unified(const std::filesystem::path& path, const std::vector<GoldInstance>& instances);

struct DatasetStats {
  std::size_t total = 0;
  std::size_t metaphor = 0;
  std::size_t literal = 0;
  std::size_t other = 0;
  double metaphor_pct = 0.0;  // metaphor / total, 0 when empty

  bool operator==(const DatasetStats&) const = default;
};

// Token-labelled data counts tokens (MRW, literal, MFlag as other); sentence
// and span data count instances by sentence_label. Throws
// std::invalid_argument on a mix of label types.
DatasetStats stats(const std::vector<GoldInstance>& instances);

// Published corpus sizes, for checking a full local copy of a corpus.
struct ReferenceRow {
  DatasetName name;
  std::size_t total;
  std::size_t metaphor;
  std::size_t literal;
  std::size_t other;
  double metaphor_pct_rounded;  // one decimal, in percent
};
const std::array<ReferenceRow, 7>& reference_rows();
const ReferenceRow& reference_row(DatasetName name);
// Counts equal and the percentage matches to one decimal place.
bool matches_reference(const DatasetStats& s, const ReferenceRow& row);

// sentence_label = metaphor iff some token is MRW; MFlag alone does not
// count. Tokens are dropped. Throws std::invalid_argument if an instance is
// not token-labelled.
std::vector<GoldInstance> to_sentence_level(const std::vector<GoldInstance>& token_instances);

}  // namespace figura::data
