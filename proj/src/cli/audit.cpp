#include <fmt/format.h>

#include <map>

#include "common.hpp"
#include "figura/audit/determinism.hpp"
#include "figura/audit/editability.hpp"
#include "figura/audit/worksheet.hpp"
#include "figura/data/sample.hpp"
#include "figura/engine/pipeline.hpp"

namespace figura::cli {
namespace {

using nlohmann::json;

struct RunInputs {
  std::string protocol;
  std::string config;
  DatasetArgs dataset;
  BackendArgs backend;
  PreprocessArgs preprocess;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--protocol", protocol, "Protocol id (bundled config)")
        ->check(CLI::IsMember({"A", "B", "C", "D"}));
    cmd.add_option("--config", config, "Protocol config (JSON)");
    dataset.add_to(cmd);
    backend.add_to(cmd);
    preprocess.add_to(cmd);
  }
};

void write_or_print(Streams io, const std::string& out, const std::string& bytes) {
  if (out.empty())
    io.out << bytes;
  else
    write_file(out, bytes);
}

struct DeterminismCmd {
  RunInputs in;
  std::string out;
};

int do_determinism(const DeterminismCmd& c, Streams io) {
  const auto config = load_protocol_config(c.in.config, c.in.protocol);
  const auto sentences = c.in.preprocess.sentences(c.in.dataset.load());
  const auto gateways = open_backend(c.in.backend);
  const auto gateway = gateways.make(config);
  const auto r = audit::determinism_check(config, sentences, *gateway, c.in.preprocess.threads);
  const json j = {{"protocol_id", engine::to_string(r.protocol_id)},
                  {"config_version", config.version},
                  {"instances_compared", r.instances_compared},
                  {"identical", r.identical},
                  {"fraction", r.fraction},
                  {"mismatched", r.mismatched}};
  if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
  io.out << j.dump() << "\n";
  io.err << fmt::format("Protocol {} determinism: {}/{} identical ({:.2f})\n",
                        engine::to_string(r.protocol_id), r.identical, r.instances_compared,
                        r.fraction);
  return 0;
}

struct SampleCmd {
  std::string rationales;
  std::size_t n = 50;
  std::uint64_t seed = 0;
  DatasetArgs dataset;
  std::string out;
};

int do_sample(const SampleCmd& c, Streams io) {
  const auto records = engine::parse_rationales(read_file(c.rationales));
  std::map<std::string, std::string> texts;
  if (!c.dataset.path.empty())
    for (const auto& inst : c.dataset.load()) texts.emplace(inst.source_id, inst.text);
  write_or_print(io, c.out, audit::export_rationale_sample(records, c.n, c.seed, texts));
  return 0;
}

struct ScoreCmd {
  std::string worksheet;
};

int do_score(const ScoreCmd& c, Streams io) {
  const auto judgments = audit::parse_worksheet(read_file(c.worksheet));
  const double score = audit::score_rationales(judgments);
  std::map<std::string, std::size_t> by_verdict;
  for (const auto& j : judgments) ++by_verdict[std::string(audit::to_string(j.verdict))];
  const json j = {{"judgments", judgments.size()}, {"verdicts", by_verdict}, {"score", score}};
  io.out << j.dump() << "\n";
  io.err << fmt::format("rationale score {:.2f}\n", score);
  return 0;
}

struct EditCmd {
  RunInputs in;
  std::string patch;
  std::vector<std::string> targets;
  double tolerance = audit::kDefaultEditTolerance;
  std::string out;
};

int do_edit(const EditCmd& c, Streams io) {
  const auto config = load_protocol_config(c.in.config, c.in.protocol);
  const json patch = json::parse(read_file(c.patch));
  const auto gold = c.in.dataset.load();
  const auto sentences = c.in.preprocess.sentences(gold);
  const auto gateways = open_backend(c.in.backend);
  const auto trial = audit::editability_trial(
      config, patch, c.targets, sentences, gold,
      [&gateways](const engine::ProtocolConfig& cfg) { return gateways.make(cfg); }, c.tolerance,
      c.in.preprocess.threads);
  const json j = audit::to_json(trial);
  if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
  io.out << j.dump() << "\n";
  return 0;
}

}  // namespace

void add_audit_command(CLI::App& app, Streams io, Action& action) {
  auto* audit_cmd = app.add_subcommand("audit", "Determinism, rationale and editability audits");
  audit_cmd->require_subcommand(1);
  {
    auto c = std::make_shared<DeterminismCmd>();
    auto* cmd = audit_cmd->add_subcommand("determinism", "Run twice and compare rationales");
    c->in.add_to(*cmd);
    cmd->add_option("--out", c->out, "Write the report here");
    cmd->callback([c, io, &action] { action = [c, io] { return do_determinism(*c, io); }; });
  }
  {
    auto c = std::make_shared<SampleCmd>();
    auto* cmd = audit_cmd->add_subcommand("sample", "Export a rationale worksheet sample");
    cmd->add_option("--rationales", c->rationales, "rationales.json from a run")->required();
    cmd->add_option("--n", c->n, "Sample size")->capture_default_str();
    cmd->add_option("--seed", c->seed, "Sampling seed");
    c->dataset.add_to(*cmd, false);
    cmd->add_option("--out", c->out, "Worksheet CSV (default: stdout)");
    cmd->callback([c, io, &action] { action = [c, io] { return do_sample(*c, io); }; });
  }
  {
    auto c = std::make_shared<ScoreCmd>();
    auto* cmd = audit_cmd->add_subcommand("score", "Score a filled worksheet");
    cmd->add_option("--worksheet", c->worksheet, "Filled worksheet CSV")->required();
    cmd->callback([c, io, &action] { action = [c, io] { return do_score(*c, io); }; });
  }
  {
    auto c = std::make_shared<EditCmd>();
    auto* cmd = audit_cmd->add_subcommand("edit", "Apply a config patch and measure its effect");
    c->in.add_to(*cmd);
    cmd->add_option("--patch", c->patch, "JSON merge patch")->required();
    cmd->add_option("--target", c->targets, "Targeted source id (repeatable)")->required();
    cmd->add_option("--tolerance", c->tolerance, "Allowed overall F1 drop")->capture_default_str();
    cmd->add_option("--out", c->out, "Write the trial report here");
    cmd->callback([c, io, &action] { action = [c, io] { return do_edit(*c, io); }; });
  }
}

}  // namespace figura::cli
