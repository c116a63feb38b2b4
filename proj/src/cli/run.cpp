#include <set>

#include "common.hpp"
#include "figura/data/sample.hpp"
#include "figura/engine/pipeline.hpp"

namespace figura::cli {
namespace {

using nlohmann::json;

constexpr const char* kPredictionsFile = "predictions.jsonl";
constexpr const char* kRationalesFile = "rationales.json";
constexpr const char* kTracesFile = "traces.jsonl";
constexpr const char* kManifestFile = "manifest.json";

struct RunOptions {
  std::string protocol;
  std::string config;
  DatasetArgs dataset;
  BackendArgs backend;
  PreprocessArgs preprocess;
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  std::string out;
  std::string manifest;
  bool backend_given = false;
};

// SHA-256 over the sorted, distinct hex digests joined by newlines.
std::string digest_set_hash(const std::vector<engine::SentenceRun>& runs, std::size_t& count) {
  std::set<std::string> hexes;
  for (const auto& run : runs)
    for (const auto& d : run.trace.all_llm_digests()) hexes.insert(d.hex());
  std::string joined;
  for (const auto& h : hexes) joined += h + "\n";
  count = hexes.size();
  return llm::sha256(joined).hex();
}

void check_checksum(const json& section, const std::string& what) {
  if (!section.contains("sha256") || section["sha256"].is_null()) return;
  const auto path = section.at("path").get<std::string>();
  if (!fs::is_regular_file(path)) throw IoError(what + " not found: " + path);
  if (sha256_file(path) != section["sha256"].get<std::string>())
    throw ManifestMismatch(what + " changed since the manifest was written: " + path);
}

std::string opt_string(const json& j, const char* key) {
  return j.contains(key) && j[key].is_string() ? j[key].get<std::string>() : std::string{};
}

void adopt_manifest(RunOptions& o) {
  const json m = json::parse(read_file(o.manifest));
  check_checksum(m.at("config"), "config");
  check_checksum(m.at("dataset"), "dataset");
  check_checksum(m.at("preprocess").at("lexicon"), "lexicon");

  o.protocol.clear();
  o.config = m["config"]["path"].get<std::string>();
  o.dataset.name = m["dataset"]["name"].get<std::string>();
  o.dataset.path = m["dataset"]["path"].get<std::string>();
  o.dataset.native = m["dataset"].value("native", false);
  o.preprocess.lexicon = m["preprocess"]["lexicon"]["path"].get<std::string>();
  o.preprocess.gold_segmentation = m["preprocess"].value("gold_segmentation", false);
  o.seed = m.at("seed").get<std::uint64_t>();
  o.sample = m.value("sample", std::size_t{0});
  const auto cache_dir = opt_string(m, "cache_dir");
  if (o.backend.cache_dir.empty()) o.backend.cache_dir = cache_dir;
  if (o.backend.stub_table.empty()) o.backend.stub_table = opt_string(m, "stub_table");
  if (!o.backend_given) o.backend.backend = cache_dir.empty() ? m.at("backend").get<std::string>()
                                                              : std::string("replay");
}

int do_run(RunOptions o, Streams io) {
  if (!o.manifest.empty()) adopt_manifest(o);
  if (o.out.empty()) throw UsageError("--out is required");
  if (o.dataset.name.empty() || o.dataset.path.empty())
    throw UsageError("--dataset and --path are required (or --manifest)");

  const auto config = load_protocol_config(o.config, o.protocol);
  auto instances = o.dataset.load();
  if (o.sample > 0) instances = data::sample(instances, o.sample, o.seed);
  const auto sentences = o.preprocess.sentences(instances);

  const auto gateways = open_backend(o.backend);
  const auto gateway = gateways.make(config);
  const auto runs = engine::run_dataset(config, sentences, *gateway, o.preprocess.threads);

  const auto records = engine::rationale_records(config, runs);
  const auto preds = engine::predictions(runs);

  std::size_t unrecorded = 0;
  std::size_t abstained = 0;
  for (const auto& run : runs)
    for (const auto& r : run.rationales)
      if (r.failure) {
        ++abstained;
        if (r.failure->kind == "fixture_miss" || r.failure->kind == "transport_error") ++unrecorded;
      }
  if (unrecorded > 0)
    io.err << "warning: " << unrecorded
           << " abstention(s) came from calls with no recorded response; a replay of this run "
              "reports them as cache misses\n";

  const fs::path out_dir = o.out;
  fs::create_directories(out_dir);
  write_file(out_dir / kPredictionsFile, data::serialize_predictions(preds));
  write_file(out_dir / kRationalesFile, engine::serialize_rationales(records));
  write_file(out_dir / kTracesFile, engine::serialize_traces(runs));

  std::size_t digest_count = 0;
  const auto set_hash = digest_set_hash(runs, digest_count);

  const std::string config_path = absolute_string(resolve_config_path(o.config, o.protocol).string());
  const std::string dataset_path = absolute_string(o.dataset.path);
  const std::string lexicon_path =
      absolute_string(o.preprocess.lexicon.empty() ? default_lexicon_path() : o.preprocess.lexicon);

  json manifest = {
      {"tool_version", tool_version()},
      {"config",
       {{"path", config_path},
        {"protocol_id", engine::to_string(config.protocol_id)},
        {"version", config.version},
        {"sha256", sha256_file(config_path)}}},
      {"dataset",
       {{"name", std::string(data::to_string(o.dataset.dataset_name()))},
        {"path", dataset_path},
        {"native", o.dataset.native},
        {"sha256", sha256_file(dataset_path)}}},
      {"preprocess",
       {{"lexicon", {{"path", lexicon_path}, {"sha256", sha256_file(lexicon_path)}}},
        {"gold_segmentation", o.preprocess.gold_segmentation}}},
      {"backend", std::string(llm::to_string(gateways.kind))},
      {"stub_table", o.backend.stub_table.empty() ? json(nullptr)
                                                  : json(absolute_string(o.backend.stub_table))},
      {"cache_dir", o.backend.cache_dir.empty() ? json(nullptr)
                                                : json(absolute_string(o.backend.cache_dir))},
      {"seed", o.seed},
      {"sample", o.sample},
      {"outputs",
       {{"predictions", kPredictionsFile},
        {"rationales", kRationalesFile},
        {"traces", kTracesFile}}},
      {"cache_digest_set_sha256", set_hash},
      {"cache_digest_count", digest_count},
      {"unrecorded_failures", unrecorded},
  };
  write_file(out_dir / kManifestFile, manifest.dump(2) + "\n");

  if (!o.manifest.empty()) {
    const json original = json::parse(read_file(o.manifest));
    if (original.value("cache_digest_set_sha256", std::string{}) != set_hash)
      io.err << "warning: consumed digest set differs from the manifest's\n";
  }

  json summary = {{"instances", runs.size()},
                  {"decisions", records.size()},
                  {"abstained", abstained},
                  {"predictions", preds.size()},
                  {"out", absolute_string(o.out)}};
  io.out << summary.dump() << "\n";
  return 0;
}

}  // namespace

void add_run_command(CLI::App& app, Streams io, Action& action) {
  auto opts = std::make_shared<RunOptions>();
  auto* cmd = app.add_subcommand("run", "Run a protocol over a dataset");
  cmd->add_option("--protocol", opts->protocol, "Protocol id; picks the bundled config when "
                                               "--config is absent")
      ->check(CLI::IsMember({"A", "B", "C", "D"}));
  cmd->add_option("--config", opts->config, "Protocol config (JSON)");
  opts->dataset.add_to(*cmd, false);
  opts->backend.add_to(*cmd);
  opts->preprocess.add_to(*cmd);
  cmd->add_option("--seed", opts->seed, "Seed for --sample");
  cmd->add_option("--sample", opts->sample, "Run on a seeded sample of this many instances");
  cmd->add_option("--out", opts->out, "Output directory");
  cmd->add_option("--manifest", opts->manifest, "Rerun from a manifest (replay by default)");
  cmd->callback([opts, cmd, io, &action] {
    opts->backend_given = cmd->count("--backend") > 0;
    action = [opts, io] { return do_run(*opts, io); };
  });
}

}  // namespace figura::cli
