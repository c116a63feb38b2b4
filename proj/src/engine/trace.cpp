#include "figura/engine/trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace figura::engine {

using nlohmann::json;

std::vector<llm::Digest> TraceRecord::all_llm_digests() const {
  std::vector<llm::Digest> out;
  for (const auto& s : stages) out.insert(out.end(), s.llm_digests.begin(), s.llm_digests.end());
  return out;
}

std::string summary_digest(const json& value) { return llm::sha256(value.dump()).hex(); }

void StageTracker::record(std::string_view stage, const json& input, const json& output,
                          std::vector<llm::Digest> llm_digests) {
  const auto it = std::find(kStages.begin() + next_, kStages.end(), stage);
  if (it == kStages.end()) {
    throw std::logic_error("stage '" + std::string(stage) + "' recorded out of order");
  }
  next_ = static_cast<std::size_t>(it - kStages.begin()) + 1;
  trace_.stages.push_back(StageRecord{std::string(stage), summary_digest(input),
                                      summary_digest(output), std::move(llm_digests)});
}

TraceRecord StageTracker::finish() && { return std::move(trace_); }

json to_json(const TraceRecord& trace) {
  json stages = json::array();
  for (const auto& s : trace.stages) {
    json digests = json::array();
    for (const auto& d : s.llm_digests) digests.push_back(d.hex());
    stages.push_back(json{{"stage", s.stage},
                          {"input_sha256", s.input_digest},
                          {"output_sha256", s.output_digest},
                          {"llm_digests", digests}});
  }
  return json{{"source_id", trace.source_id}, {"stages", stages}};
}

}  // namespace figura::engine
