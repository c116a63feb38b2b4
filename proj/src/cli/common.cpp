#include "common.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "figura/data/adapters.hpp"
#include "figura/llm/backend.hpp"
#include "figura/llm/digest.hpp"
#include "figura/text/segmenter.hpp"

namespace figura::cli {

void DatasetArgs::add_to(CLI::App& app, bool required) {
  auto* d = app.add_option("--dataset", name, "Corpus name (PSU_CMC, CMC, CMDAG, NLPCC2024_T9, "
                                              "CHINESE_SIMILE, CONFIGURE, CHINESE_MCORPUS)");
  auto* p = app.add_option("--path", path, "Unified JSON-lines file (or native file with --native)");
  if (required) {
    d->required();
    p->required();
  }
  app.add_flag("--native", native, "Read --path in the corpus' native layout");
}

data::DatasetName DatasetArgs::dataset_name() const {
  auto parsed = data::parse_dataset_name(name);
  if (!parsed) throw UsageError("unknown dataset '" + name + "'");
  return *parsed;
}

std::vector<data::GoldInstance> DatasetArgs::load() const {
  const auto dataset = dataset_name();
  if (!fs::is_regular_file(path)) throw IoError("dataset file not found: " + path);
  if (native) return data::import_native(dataset, fs::path(path));
  return data::load(data::DatasetDescriptor{dataset, path});
}

void BackendArgs::add_to(CLI::App& app) {
  app.add_option("--backend", backend, "LLM backend")
      ->check(CLI::IsMember({"live", "replay", "stub"}))
      ->capture_default_str();
  app.add_option("--stub-table", stub_table, "Stub fixture table (stub backend)");
  app.add_option("--cache-dir", cache_dir,
                 "Response cache: read by replay, recorded into by live and stub");
}

std::shared_ptr<llm::Gateway> Gateways::make(const engine::ProtocolConfig& config) const {
  auto registry = engine::make_registry(config);
  engine::validate_config(config, *registry);
  return std::make_shared<llm::Gateway>(registry, backend, cache);
}

Gateways open_backend(const BackendArgs& args) {
  Gateways g;
  auto kind = llm::parse_backend_kind(args.backend);
  if (!kind) throw UsageError("unknown backend '" + args.backend + "'");
  g.kind = *kind;
  if (!args.cache_dir.empty()) {
    if (g.kind == llm::BackendKind::Replay && !fs::is_directory(args.cache_dir))
      throw IoError("cache directory not found: " + args.cache_dir);
    g.cache = std::make_shared<llm::ResponseCache>(args.cache_dir);
  }
  switch (g.kind) {
    case llm::BackendKind::Stub:
      if (args.stub_table.empty()) throw UsageError("--backend stub needs --stub-table");
      if (!fs::is_regular_file(args.stub_table))
        throw IoError("stub table not found: " + args.stub_table);
      g.backend = std::make_shared<llm::StubBackend>(llm::StubTable::load(args.stub_table));
      break;
    case llm::BackendKind::Replay:
      if (!g.cache) throw UsageError("--backend replay needs --cache-dir");
      g.backend = std::make_shared<llm::ReplayBackend>(g.cache);
      break;
    case llm::BackendKind::Live:
      g.backend = std::make_shared<llm::LiveBackend>(llm::LiveSettings::from_environment());
      break;
  }
  return g;
}

void PreprocessArgs::add_to(CLI::App& app) {
  app.add_option("--lexicon", lexicon, "Segmentation lexicon (word<TAB>freq<TAB>POS)");
  app.add_flag("--gold-segmentation", gold_segmentation,
               "Use the corpus' own tokens instead of the segmenter when present");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

std::vector<text::Sentence> PreprocessArgs::sentences(
    const std::vector<data::GoldInstance>& instances) const {
  const std::string path = lexicon.empty() ? default_lexicon_path() : lexicon;
  if (!fs::is_regular_file(path)) throw IoError("lexicon not found: " + path);
  auto lex = std::make_shared<const text::Lexicon>(text::Lexicon::load(path));
  text::MaxMatchSegmenter segmenter(lex);
  std::vector<text::Sentence> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    if (gold_segmentation && inst.tokens) {
      std::vector<std::string> surfaces;
      surfaces.reserve(inst.tokens->size());
      for (const auto& t : *inst.tokens) surfaces.push_back(t.surface);
      out.push_back(text::from_segmentation(inst.text, inst.source_id, surfaces, *lex));
    } else {
      out.push_back(text::preprocess(inst.text, inst.source_id, segmenter, *lex));
    }
  }
  return out;
}

fs::path resolve_config_path(const std::string& config_path, const std::string& protocol) {
  if (!config_path.empty()) return config_path;
  if (protocol.empty()) throw UsageError("--config or --protocol is required");
  std::string lower = protocol;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return fs::path(default_config_dir()) / ("protocol_" + lower + ".json");
}

engine::ProtocolConfig load_protocol_config(const std::string& config_path,
                                            const std::string& protocol) {
  const fs::path path = resolve_config_path(config_path, protocol);
  if (!fs::is_regular_file(path)) throw IoError("config not found: " + path.string());
  auto config = engine::load_config(path);
  if (!protocol.empty() && std::string(engine::to_string(config.protocol_id)) != protocol)
    throw UsageError("config " + path.string() + " is protocol " +
                     std::string(engine::to_string(config.protocol_id)) + ", not " + protocol);
  return config;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::string sha256_file(const fs::path& path) { return llm::sha256(read_file(path)).hex(); }

std::string absolute_string(const std::string& path) {
  if (path.empty()) return {};
  return fs::absolute(path).lexically_normal().string();
}

const std::string& default_lexicon_path() {
  static const std::string path = FIGURA_DEFAULT_LEXICON;
  return path;
}

const std::string& default_config_dir() {
  static const std::string path = FIGURA_CONFIG_DIR;
  return path;
}

std::string tool_version() { return FIGURA_VERSION; }

}  // namespace figura::cli
