#pragma once

#include <string>
#include <vector>

#include "figura/llm/digest.hpp"

namespace figura::protocols {

// Running record of a stage's gateway traffic. `step` names the call in
// progress, so an exception escaping a stage op can be attributed to it.
struct CallLog {
  std::string step;
  std::vector<llm::Digest> digests;
};

}  // namespace figura::protocols
