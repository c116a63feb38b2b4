#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "figura/engine/config.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/text/token.hpp"

namespace figura::audit {

struct DeterminismReport {
  engine::ProtocolId protocol_id = engine::ProtocolId::A;
  std::size_t instances_compared = 0;
  std::size_t identical = 0;
  double fraction = 1.0;  // identical / instances_compared, 1 when nothing was compared
  std::vector<std::string> mismatched;  // source ids, sorted
};

// Runs the protocol twice and compares each instance's serialized rationale
// records byte for byte. `between_runs` is invoked after the first run, e.g.
// to perturb the cache in tests. A cache miss in either run aborts with
// llm::CacheMiss carrying the missing digest.
DeterminismReport determinism_check(const engine::ProtocolConfig& config,
                                    const std::vector<text::Sentence>& sentences,
                                    llm::Gateway& gateway, unsigned threads = 1,
                                    const std::function<void()>& between_runs = {});

}  // namespace figura::audit
