#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "figura/data/instance.hpp"
#include "figura/engine/config.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/text/token.hpp"
#include "json.hpp"

namespace figura::audit {

inline constexpr double kDefaultEditTolerance = 0.01;

struct EditTrial {
  nlohmann::json config_patch;
  std::string base_version;
  std::string patched_version;
  std::vector<std::string> targeted_instances;
  std::vector<std::string> changed_targets;  // targeted ids whose decisions differ
  bool targeted_changed = false;
  double overall_f1_before = 0.0;
  double overall_f1_after = 0.0;
  double tolerance = kDefaultEditTolerance;
  bool success = false;  // targeted_changed and after >= before - tolerance
};

// Builds the gateway a config runs against; the patched config may register
// extra templates.
using GatewayFactory = std::function<std::shared_ptr<llm::Gateway>(const engine::ProtocolConfig&)>;

// Applies the merge patch (engine::apply_patch, so PatchConflict propagates),
// runs both configs over `full_set`, and scores both against `gold` with
// metrics::evaluate. Throws std::invalid_argument for a targeted id missing
// from `full_set`.
EditTrial editability_trial(const engine::ProtocolConfig& config, const nlohmann::json& patch,
                            const std::vector<std::string>& targeted,
                            const std::vector<text::Sentence>& full_set,
                            const std::vector<data::GoldInstance>& gold,
                            const GatewayFactory& make_gateway,
                            double tolerance = kDefaultEditTolerance, unsigned threads = 1);

nlohmann::json to_json(const EditTrial& trial);

}  // namespace figura::audit
