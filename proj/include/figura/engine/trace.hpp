#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "figura/llm/digest.hpp"
#include "json.hpp"

namespace figura::engine {

inline constexpr std::array<std::string_view, 5> kStages = {
    "preprocessing", "candidate-selection", "semantic-analysis", "classification",
    "rationale-generation"};

// Input and output are summarised by the SHA-256 of their compact JSON.
struct StageRecord {
  std::string stage;
  std::string input_digest;
  std::string output_digest;
  std::vector<llm::Digest> llm_digests;

  bool operator==(const StageRecord&) const = default;
};

struct TraceRecord {
  std::string source_id;
  std::vector<StageRecord> stages;

  std::vector<llm::Digest> all_llm_digests() const;
  bool operator==(const TraceRecord&) const = default;
};

std::string summary_digest(const nlohmann::json& value);

// Appends stages in pipeline order; recording out of order throws
// std::logic_error.
class StageTracker {
 public:
  explicit StageTracker(std::string source_id) { trace_.source_id = std::move(source_id); }

  void record(std::string_view stage, const nlohmann::json& input, const nlohmann::json& output,
              std::vector<llm::Digest> llm_digests = {});
  TraceRecord finish() &&;

 private:
  TraceRecord trace_;
  std::size_t next_ = 0;
};

nlohmann::json to_json(const TraceRecord& trace);

}  // namespace figura::engine
