#include "figura/audit/editability.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "figura/engine/pipeline.hpp"
#include "figura/metrics/evaluate.hpp"

namespace figura::audit {

namespace {

using DecisionKey = std::vector<std::pair<std::optional<std::size_t>, engine::Label>>;

std::map<std::string, DecisionKey> decisions_by_id(const std::vector<engine::SentenceRun>& runs) {
  std::map<std::string, DecisionKey> out;
  for (const auto& run : runs) {
    auto& key = out[run.source_id];
    for (const auto& d : run.decisions) key.emplace_back(d.token_index, d.label);
  }
  return out;
}

}  // namespace

EditTrial editability_trial(const engine::ProtocolConfig& config, const nlohmann::json& patch,
                            const std::vector<std::string>& targeted,
                            const std::vector<text::Sentence>& full_set,
                            const std::vector<data::GoldInstance>& gold,
                            const GatewayFactory& make_gateway, double tolerance,
                            unsigned threads) {
  std::set<std::string> ids;
  for (const auto& s : full_set) ids.insert(s.source_id);
  for (const auto& t : targeted) {
    if (!ids.contains(t)) throw std::invalid_argument("targeted instance '" + t + "' not in the set");
  }

  const auto patched = engine::apply_patch(config, patch);

  const auto before_gw = make_gateway(config);
  const auto after_gw = make_gateway(patched);
  const auto before = engine::run_dataset(config, full_set, *before_gw, threads);
  const auto after = engine::run_dataset(patched, full_set, *after_gw, threads);

  EditTrial trial;
  trial.config_patch = patch;
  trial.base_version = config.version;
  trial.patched_version = patched.version;
  trial.targeted_instances = targeted;
  trial.tolerance = tolerance;

  const auto b = decisions_by_id(before);
  const auto a = decisions_by_id(after);
  for (const auto& t : targeted) {
    if (b.at(t) != a.at(t)) trial.changed_targets.push_back(t);
  }
  trial.targeted_changed = !trial.changed_targets.empty();

  trial.overall_f1_before = metrics::evaluate(engine::predictions(before), gold).overall.f1;
  trial.overall_f1_after = metrics::evaluate(engine::predictions(after), gold).overall.f1;
  trial.success = trial.targeted_changed &&
                  trial.overall_f1_after >= trial.overall_f1_before - tolerance;
  return trial;
}

nlohmann::json to_json(const EditTrial& t) {
  return nlohmann::json{{"config_patch", t.config_patch},
                        {"base_version", t.base_version},
                        {"patched_version", t.patched_version},
                        {"targeted_instances", t.targeted_instances},
                        {"changed_targets", t.changed_targets},
                        {"targeted_changed", t.targeted_changed},
                        {"overall_f1_before", t.overall_f1_before},
                        {"overall_f1_after", t.overall_f1_after},
                        {"f1_delta", t.overall_f1_after - t.overall_f1_before},
                        {"tolerance", t.tolerance},
                        {"success", t.success}};
}

}  // namespace figura::audit
