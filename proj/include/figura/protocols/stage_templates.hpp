#pragma once

#include <string>

#include "figura/llm/templates.hpp"

namespace figura::protocols {

// Template id used at each LLM-backed stage. Only the stages of the running
// protocol are consulted.
struct TemplateIds {
  std::string contextual{llm::templates::kContextualMeaning};
  std::string basic{llm::templates::kBasicMeaning};
  std::string contrast{llm::templates::kMeaningContrast};
  std::string vehicle{llm::templates::kVehicle};
  std::string tenor{llm::templates::kTenor};
  std::string ground{llm::templates::kGround};
  std::string domain{llm::templates::kDomainLabel};
  std::string valence{llm::templates::kSentenceValence};
  std::string incongruity{llm::templates::kValenceIncongruity};
  std::string resolution{llm::templates::kFigurativeResolution};
  std::string comparison{llm::templates::kComparison};
};

}  // namespace figura::protocols
