#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "figura/data/instance.hpp"
#include "json.hpp"

namespace figura::data {

// One line of a prediction file. `target` is a token index for token-level
// predictions and the source id otherwise; token predictions also carry the
// token's code-point offsets.
struct Prediction {
  std::string source_id;
  nlohmann::json target;
  std::string label;  // METAPHORICAL, LITERAL or ABSTAIN
  std::optional<std::size_t> char_start;
  std::optional<std::size_t> char_end;
  std::vector<GoldSpan> spans;

  bool token_level() const { return target.is_number_integer(); }
  bool positive() const { return label == "METAPHORICAL"; }
  bool abstained() const { return label == "ABSTAIN"; }
  bool operator==(const Prediction&) const = default;
};

nlohmann::json to_json(const Prediction& p);
Prediction prediction_from_json(const nlohmann::json& j);  // std::invalid_argument

std::string serialize_predictions(const std::vector<Prediction>& predictions);
std::vector<Prediction> read_predictions(std::istream& in);  // ParseError
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

}  // namespace figura::data
