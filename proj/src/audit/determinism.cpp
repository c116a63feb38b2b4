#include "figura/audit/determinism.hpp"

#include <map>

#include "figura/engine/pipeline.hpp"
#include "figura/llm/errors.hpp"

namespace figura::audit {

namespace {

std::map<std::string, std::string> per_instance_bytes(const engine::ProtocolConfig& config,
                                                      const std::vector<engine::SentenceRun>& runs) {
  std::map<std::string, std::string> out;
  for (const auto& run : runs) {
    for (const auto& r : run.rationales) {
      if (r.failure && r.failure->kind == llm::to_string(llm::GatewayErrorKind::CacheMiss)) {
        const auto digest = r.failure->digest ? llm::Digest::from_hex(*r.failure->digest) : std::nullopt;
        throw llm::CacheMiss(digest.value_or(llm::Digest{}));
      }
    }
    out[run.source_id] += engine::serialize_rationales(engine::rationale_records(config, run));
  }
  return out;
}

}  // namespace

DeterminismReport determinism_check(const engine::ProtocolConfig& config,
                                    const std::vector<text::Sentence>& sentences,
                                    llm::Gateway& gateway, unsigned threads,
                                    const std::function<void()>& between_runs) {
  const auto first = per_instance_bytes(config, engine::run_dataset(config, sentences, gateway, threads));
  if (between_runs) between_runs();
  const auto second = per_instance_bytes(config, engine::run_dataset(config, sentences, gateway, threads));

  DeterminismReport report;
  report.protocol_id = config.protocol_id;
  report.instances_compared = first.size();
  for (const auto& [id, bytes] : first) {
    const auto it = second.find(id);
    if (it != second.end() && it->second == bytes) {
      ++report.identical;
    } else {
      report.mismatched.push_back(id);
    }
  }
  if (report.instances_compared > 0) {
    report.fraction = static_cast<double>(report.identical) /
                      static_cast<double>(report.instances_compared);
  }
  return report;
}

}  // namespace figura::audit
