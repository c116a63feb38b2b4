#include "figura/engine/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace figura::engine {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

const std::set<std::string>& allowed_params(ProtocolId id) {
  static const std::set<std::string> a{"candidate_pos", "dictionary", "dictionary_file", "templates"};
  static const std::set<std::string> b{"domain_taxonomy", "templates"};
  static const std::set<std::string> c{"templates"};
  static const std::set<std::string> d{"markers", "marker_file", "domain_taxonomy", "templates"};
  switch (id) {
    case ProtocolId::A:
      return a;
    case ProtocolId::B:
      return b;
    case ProtocolId::C:
      return c;
    case ProtocolId::D:
      return d;
  }
  return a;
}

struct StageTemplate {
  std::string_view stage;
  std::string TemplateIds::*field;
  std::string_view schema;
};

std::vector<StageTemplate> stage_templates(ProtocolId id) {
  using T = TemplateIds;
  switch (id) {
    case ProtocolId::A:
      return {{"contextual", &T::contextual, "contextual_meaning"},
              {"basic", &T::basic, "basic_meaning"},
              {"contrast", &T::contrast, "meaning_contrast"}};
    case ProtocolId::B:
      return {{"vehicle", &T::vehicle, "vehicle_identification"},
              {"tenor", &T::tenor, "tenor_identification"},
              {"ground", &T::ground, "ground_extraction"},
              {"domain", &T::domain, "domain_label"}};
    case ProtocolId::C:
      return {{"valence", &T::valence, "sentence_valence"},
              {"incongruity", &T::incongruity, "valence_incongruity"},
              {"resolution", &T::resolution, "figurative_resolution"}};
    case ProtocolId::D:
      return {{"comparison", &T::comparison, "comparison_extraction"},
              {"domain", &T::domain, "domain_label"}};
  }
  return {};
}

fs::path resolve(const fs::path& base, const std::string& ref) {
  const fs::path p(ref);
  return p.is_absolute() || base.empty() ? p : base / p;
}

template <typename T>
T get_as(const json& j, std::string_view what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + std::string(what) + "' has the wrong type");
  }
}

}  // namespace

std::vector<std::string> load_markers(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read marker lexicon " + path.string());
  std::vector<std::string> markers;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    markers.push_back(line);
  }
  return markers;
}

std::map<std::string, std::string> load_dictionary(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read dictionary " + path.string());
  std::map<std::string, std::string> dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected word<TAB>basic_gloss");
    }
    dict.insert_or_assign(line.substr(0, tab), line.substr(tab + 1));
  }
  return dict;
}

ProtocolConfig config_from_json(const json& document, const fs::path& base_dir) {
  if (!document.is_object()) throw ConfigError("protocol config must be a JSON object");
  ProtocolConfig cfg;
  cfg.document = document;
  cfg.base_dir = base_dir;

  const auto id_name = get_as<std::string>(document.value("protocol_id", json()), "protocol_id");
  const auto id = parse_protocol_id(id_name);
  if (!id) throw ConfigError("unknown protocol_id '" + id_name + "'");
  cfg.protocol_id = *id;
  cfg.version = get_as<std::string>(document.value("version", json()), "version");
  if (cfg.version.empty()) throw ConfigError("config version must not be empty");

  for (const auto& [key, _] : document.items()) {
    if (key != "protocol_id" && key != "version" && key != "stage_params" && key != "templates" &&
        key != "description") {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (document.contains("templates")) {
    for (const auto& t : document.at("templates")) {
      cfg.extra_templates.push_back(llm::PromptTemplate{
          get_as<std::string>(t.at("id"), "templates.id"),
          get_as<std::string>(t.at("text"), "templates.text"),
          get_as<std::string>(t.at("schema_id"), "templates.schema_id")});
    }
  }

  const json params = document.value("stage_params", json::object());
  if (!params.is_object()) throw ConfigError("stage_params must be an object");
  const auto& allowed = allowed_params(cfg.protocol_id);
  for (const auto& [key, _] : params.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("stage_params key '" + key + "' does not apply to protocol " + id_name);
    }
  }

  auto& sp = cfg.params;
  if (params.contains("candidate_pos")) {
    sp.candidate_pos.clear();
    for (const auto& name : get_as<std::vector<std::string>>(params.at("candidate_pos"), "candidate_pos")) {
      const auto tag = text::parse_pos_tag(name);
      if (!tag) throw ConfigError("unknown POS tag '" + name + "' in candidate_pos");
      sp.candidate_pos.push_back(*tag);
    }
  }
  if (params.contains("dictionary_file")) {
    sp.dictionary = load_dictionary(
        resolve(base_dir, get_as<std::string>(params.at("dictionary_file"), "dictionary_file")));
  }
  if (params.contains("dictionary")) {
    for (const auto& [word, gloss] : params.at("dictionary").items()) {
      sp.dictionary.insert_or_assign(word, get_as<std::string>(gloss, "dictionary"));
    }
  }
  if (params.contains("marker_file")) {
    sp.markers = load_markers(resolve(base_dir, get_as<std::string>(params.at("marker_file"), "marker_file")));
  }
  if (params.contains("markers")) {
    sp.markers = get_as<std::vector<std::string>>(params.at("markers"), "markers");
  }
  if (params.contains("domain_taxonomy")) {
    sp.domain_taxonomy.clear();
    for (const auto& name : get_as<std::vector<std::string>>(params.at("domain_taxonomy"), "domain_taxonomy")) {
      const auto label = protocols::parse_domain(name);
      if (!label) throw ConfigError("domain '" + name + "' is not in the closed taxonomy");
      sp.domain_taxonomy.push_back(*label);
    }
    if (sp.domain_taxonomy.empty()) throw ConfigError("domain_taxonomy must not be empty");
  }
  if (params.contains("templates")) {
    const auto stages = stage_templates(cfg.protocol_id);
    for (const auto& [stage, value] : params.at("templates").items()) {
      const auto it = std::find_if(stages.begin(), stages.end(),
                                   [&](const StageTemplate& s) { return s.stage == stage; });
      if (it == stages.end()) {
        throw ConfigError("protocol " + id_name + " has no template stage '" + stage + "'");
      }
      sp.templates.*(it->field) = get_as<std::string>(value, "templates");
    }
  }

  if (cfg.protocol_id == ProtocolId::D) {
    if (sp.markers.empty()) throw ConfigError("protocol D needs a non-empty marker lexicon");
    for (const auto& m : sp.markers) {
      if (m.empty()) throw ConfigError("empty marker in marker lexicon");
    }
  }
  if (cfg.protocol_id == ProtocolId::A && sp.candidate_pos.empty()) {
    throw ConfigError("candidate_pos must not be empty");
  }
  validate_config(cfg, *make_registry(cfg));
  return cfg;
}

ProtocolConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw ConfigError("malformed config " + path.string() + ": " + ex.what());
  }
  return config_from_json(doc, path.parent_path());
}

std::shared_ptr<llm::TemplateRegistry> make_registry(const ProtocolConfig& config) {
  auto registry = std::make_shared<llm::TemplateRegistry>(llm::TemplateRegistry::builtin());
  for (const auto& t : config.extra_templates) {
    try {
      registry->add_template(t);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(ex.what());
    }
  }
  return registry;
}

void validate_config(const ProtocolConfig& config, const llm::TemplateRegistry& registry) {
  for (const auto& stage : stage_templates(config.protocol_id)) {
    const std::string& id = config.params.templates.*(stage.field);
    if (!registry.has_template(id)) {
      throw ConfigError("stage '" + std::string(stage.stage) + "' references unknown template '" +
                        id + "'");
    }
    if (registry.get_template(id).schema_id != stage.schema) {
      throw ConfigError("template '" + id + "' must produce schema '" + std::string(stage.schema) +
                        "' for stage '" + std::string(stage.stage) + "'");
    }
  }
}

ProtocolConfig apply_patch(const ProtocolConfig& config, const json& patch) {
  json body = patch;
  if (patch.is_object() && patch.contains("patch")) {
    if (patch.contains("base_version") &&
        patch.at("base_version").get<std::string>() != config.version) {
      throw PatchConflict("patch targets version '" + patch.at("base_version").get<std::string>() +
                          "' but config is '" + config.version + "'");
    }
    body = patch.at("patch");
  }
  if (!body.is_object()) throw PatchConflict("patch must be a JSON object");
  json doc = config.document;
  doc.merge_patch(body);
  if (doc.value("protocol_id", json()) != config.document.value("protocol_id", json())) {
    throw PatchConflict("patch must not change protocol_id");
  }
  try {
    return config_from_json(doc, config.base_dir);
  } catch (const PatchConflict&) {
    throw;
  } catch (const ConfigError& ex) {
    throw PatchConflict(std::string("patched config is invalid: ") + ex.what());
  }
}

}  // namespace figura::engine
