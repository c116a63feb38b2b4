#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "figura/data/predictions.hpp"
#include "figura/engine/config.hpp"
#include "figura/engine/decision.hpp"
#include "figura/engine/trace.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/text/token.hpp"

namespace figura::engine {

struct SentenceRun {
  std::string source_id;
  ProtocolId protocol = ProtocolId::A;
  std::vector<Decision> decisions;
  std::vector<Rationale> rationales;  // parallel to decisions
  TraceRecord trace;
};

// Runs the configured protocol over one preprocessed sentence. Gateway errors
// become ABSTAIN decisions carrying the failure; other exceptions propagate.
// The gateway's registry must hold every template the config names.
SentenceRun run_protocol(const ProtocolConfig& config, const text::Sentence& sentence,
                         llm::Gateway& gateway);

// run_protocol over every sentence using up to `threads` workers. The result
// is ordered by source_id (input order among equal ids) whatever the
// scheduling.
std::vector<SentenceRun> run_dataset(const ProtocolConfig& config,
                                     const std::vector<text::Sentence>& sentences,
                                     llm::Gateway& gateway, unsigned threads = 1);

// One entry of a rationale file.
struct RationaleRecord {
  std::string source_id;
  std::string protocol_id;
  std::string config_version;
  nlohmann::json target;  // token index (A) or source id (B-D)
  std::string label;
  std::string triggering_step;
  nlohmann::json evidence;
  std::string confidence;
  std::vector<std::string> llm_digests;

  bool operator==(const RationaleRecord&) const = default;
};

std::vector<RationaleRecord> rationale_records(const ProtocolConfig& config, const SentenceRun& run);
std::vector<RationaleRecord> rationale_records(const ProtocolConfig& config,
                                               const std::vector<SentenceRun>& runs);

nlohmann::json to_json(const RationaleRecord& record);
RationaleRecord rationale_from_json(const nlohmann::json& j);  // std::invalid_argument

// JSON array, keys sorted, one compact record per line. "[]\n" when empty.
std::string serialize_rationales(const std::vector<RationaleRecord>& records);
std::vector<RationaleRecord> parse_rationales(std::string_view bytes);  // std::invalid_argument

// Prediction interchange records: token index plus offsets for A, the source
// id plus extracted spans (tenor/vehicle for B and D, figure for C) otherwise.
std::vector<data::Prediction> predictions(const std::vector<SentenceRun>& runs);

// One trace object per line.
std::string serialize_traces(const std::vector<SentenceRun>& runs);

}  // namespace figura::engine
