#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "figura/engine/decision.hpp"
#include "figura/llm/templates.hpp"
#include "figura/protocols/stage_templates.hpp"
#include "figura/protocols/types.hpp"
#include "figura/text/token.hpp"
#include "json.hpp"

namespace figura::engine {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using protocols::TemplateIds;

struct StageParams {
  // A
  std::vector<text::PosTag> candidate_pos{text::PosTag::Noun, text::PosTag::Verb,
                                          text::PosTag::Adj, text::PosTag::Adv};
  std::map<std::string, std::string> dictionary;  // word -> basic gloss
  // D
  std::vector<std::string> markers;
  // B, D
  std::vector<protocols::DomainLabel> domain_taxonomy{protocols::kAllDomains.begin(),
                                                      protocols::kAllDomains.end()};
  TemplateIds templates;
};

// A protocol's rule script. `document` keeps the JSON the config was built
// from so patches can be applied to it; relative file references resolve
// against `base_dir`.
//
//   {"protocol_id": "D", "version": "d-1",
//    "stage_params": {"marker_file": "../data/markers.txt",
//                     "domain_taxonomy": [...], "templates": {"comparison": "..."}},
//    "templates": [{"id": ..., "text": ..., "schema_id": ...}]}
//
// Accepted stage_params keys per protocol:
//   A: candidate_pos, dictionary, dictionary_file, templates{contextual,basic,contrast}
//   B: domain_taxonomy, templates{vehicle,tenor,ground,domain}
//   C: templates{valence,incongruity,resolution}
//   D: markers, marker_file, domain_taxonomy, templates{comparison,domain}
struct ProtocolConfig {
  ProtocolId protocol_id = ProtocolId::A;
  std::string version;
  StageParams params;
  std::vector<llm::PromptTemplate> extra_templates;
  nlohmann::json document;
  std::filesystem::path base_dir;
};

ProtocolConfig config_from_json(const nlohmann::json& document,
                                const std::filesystem::path& base_dir = {});
ProtocolConfig load_config(const std::filesystem::path& path);

// Built-in templates plus the config's own.
std::shared_ptr<llm::TemplateRegistry> make_registry(const ProtocolConfig& config);

// Throws ConfigError if a referenced template is not registered or if the
// template's schema differs from the built-in one for that stage.
void validate_config(const ProtocolConfig& config, const llm::TemplateRegistry& registry);

// Marker lexicon file: one marker per line, '#' comments.
std::vector<std::string> load_markers(const std::filesystem::path& path);
// Mini-dictionary file: `word<TAB>basic_gloss` per line, '#' comments.
std::map<std::string, std::string> load_dictionary(const std::filesystem::path& path);

// JSON merge patch (RFC 7386) against config.document. Throws ConfigError
// (as PatchConflict) if the patch changes protocol_id, names a base version
// that is not the config's, or yields an invalid config. A patch may be
// wrapped as {"base_version": v, "patch": {...}}.
class PatchConflict : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
ProtocolConfig apply_patch(const ProtocolConfig& config, const nlohmann::json& patch);

}  // namespace figura::engine
