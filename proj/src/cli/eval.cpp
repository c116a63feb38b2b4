#include <map>

#include "common.hpp"
#include "figura/data/predictions.hpp"
#include "figura/metrics/baselines.hpp"
#include "figura/metrics/evaluate.hpp"
#include "figura/metrics/report.hpp"

namespace figura::cli {
namespace {

using nlohmann::json;

void add_format_option(CLI::App& cmd, std::string& format) {
  cmd.add_option("--format", format, "stdout format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

// Text to stdout in the chosen format; with --out both forms go to files.
void emit(Streams io, const std::string& format, const std::string& out_dir,
          const std::string& stem, const json& j, const std::string& text) {
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / (stem + ".json"), j.dump(2) + "\n");
    write_file(fs::path(out_dir) / (stem + ".txt"), text);
  }
  if (format == "json")
    io.out << j.dump(2) << "\n";
  else
    io.out << text;
}

std::string run_name(const std::string& path) {
  const fs::path p = fs::absolute(path).lexically_normal();
  const auto parent = p.parent_path().filename().string();
  return parent.empty() ? p.stem().string() : parent;
}

struct EvalCmd {
  std::string predictions;
  DatasetArgs gold;
  std::string span_match = "overlap1";
  std::size_t iterations = metrics::kDefaultBootstrapIterations;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string name;
  std::string format = "text";
  std::string out;
};

int do_eval(const EvalCmd& c, Streams io) {
  if (!fs::is_regular_file(c.predictions))
    throw IoError("predictions file not found: " + c.predictions);
  const auto preds = data::read_predictions(fs::path(c.predictions));
  const auto gold = c.gold.load();
  metrics::EvalOptions opts;
  opts.span_match = *metrics::parse_span_match(c.span_match);
  opts.iterations = c.iterations;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const auto report = metrics::evaluate(preds, gold, opts);

  const std::string name = c.name.empty() ? run_name(c.predictions) : c.name;
  const std::string evaluation = (report.level == "token" ? "Token-level" : "Sentence-level") +
                                 std::string(" (") +
                                 std::string(data::display_name(c.gold.dataset_name())) + ")";
  json j = metrics::to_json(report);
  j["name"] = name;
  j["dataset"] = std::string(data::to_string(c.gold.dataset_name()));
  emit(io, c.format, c.out, "eval", j, metrics::format_eval_table(report, name, evaluation));
  return 0;
}

struct CompareCmd {
  std::vector<std::string> runs;
  std::string format = "text";
  std::string out;
};

int do_compare(const CompareCmd& c, Streams io) {
  if (c.runs.size() < 2) throw UsageError("compare needs at least two prediction files");
  std::vector<std::pair<std::string, std::vector<data::Prediction>>> runs;
  std::map<std::string, int> seen;
  for (const auto& arg : c.runs) {
    std::string name;
    std::string path = arg;
    if (const auto eq = arg.find('='); eq != std::string::npos && !fs::exists(arg)) {
      name = arg.substr(0, eq);
      path = arg.substr(eq + 1);
    }
    if (!fs::is_regular_file(path)) throw IoError("predictions file not found: " + path);
    if (name.empty()) name = run_name(path);
    if (seen[name]++ > 0) name += "#" + std::to_string(seen[name]);
    runs.emplace_back(name, data::read_predictions(fs::path(path)));
  }
  const auto matrix = metrics::compare_runs(runs);
  emit(io, c.format, c.out, "kappa", metrics::to_json(matrix), metrics::format_kappa_table(matrix));
  return 0;
}

struct BaselineCmd {
  DatasetArgs dataset;
  std::optional<double> prior;
  std::size_t seeds = 50;
  std::uint64_t seed = 0;
  std::string word_list;
  std::string format = "text";
  std::string out;
};

int do_baseline(const BaselineCmd& c, Streams io) {
  const auto instances = c.dataset.load();
  const auto gold = metrics::token_gold(instances);
  if (gold.empty()) throw UsageError("baselines need a token-labelled dataset");

  std::size_t positives = 0;
  for (auto g : gold) positives += g;
  const double prior =
      c.prior.value_or(static_cast<double>(positives) / static_cast<double>(gold.size()));
  if (c.seeds == 0) throw UsageError("--seeds must be positive");

  const auto majority = metrics::prf1(metrics::baseline_majority(gold), gold);
  const auto random = metrics::prf1(metrics::baseline_random(gold.size(), prior, c.seed), gold);
  std::vector<std::uint64_t> seeds(c.seeds);
  for (std::size_t i = 0; i < c.seeds; ++i) seeds[i] = c.seed + i;
  const auto summary = metrics::random_baseline_summary(gold, prior, seeds);

  metrics::TextTable t({"Baseline", "P", "R", "F1", "Acc"}, {false, true, true, true, true});
  auto row = [&](const std::string& label, const metrics::PRF1Report& r) {
    t.add_row({label, metrics::fixed3(r.precision), metrics::fixed3(r.recall),
               metrics::fixed3(r.f1), metrics::fixed3(r.accuracy)});
  };
  row("Majority class", majority);
  row("Random (p=" + metrics::fixed3(prior) + ")", random);

  json j = {{"tokens", gold.size()},
            {"prior", prior},
            {"majority", metrics::to_json(majority)},
            {"random", metrics::to_json(random)},
            {"random_seeds", metrics::to_json(summary)}};
  if (!c.word_list.empty()) {
    if (!fs::is_regular_file(c.word_list)) throw IoError("word list not found: " + c.word_list);
    const auto lexicon = metrics::prf1(
        metrics::baseline_lexicon(instances, metrics::load_word_list(c.word_list)), gold);
    row("Lexicon lookup", lexicon);
    j["lexicon"] = metrics::to_json(lexicon);
  }
  std::string text = t.render();
  text += "random F1 over " + std::to_string(c.seeds) + " seeds: mean " +
          metrics::fixed3(summary.mean_f1) + ", sd " + metrics::fixed3(summary.stdev_f1) +
          ", range [" + metrics::fixed3(summary.min_f1) + ", " + metrics::fixed3(summary.max_f1) +
          "]\n";
  emit(io, c.format, c.out, "baselines", j, text);
  return 0;
}

}  // namespace

void add_eval_commands(CLI::App& app, Streams io, Action& action) {
  {
    auto c = std::make_shared<EvalCmd>();
    auto* cmd = app.add_subcommand("eval", "Score predictions against gold labels");
    cmd->add_option("--predictions", c->predictions, "Prediction JSON-lines file")->required();
    c->gold.add_to(*cmd);
    cmd->add_option("--span-match", c->span_match, "Partial span criterion")
        ->check(CLI::IsMember({"overlap1", "proportional"}))
        ->capture_default_str();
    cmd->add_option("--iterations", c->iterations, "Bootstrap iterations (0 disables)")
        ->capture_default_str();
    cmd->add_option("--seed", c->seed, "Bootstrap seed");
    cmd->add_option("--threads", c->threads, "Bootstrap worker threads")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--name", c->name, "Row label (default: the predictions' directory name)");
    add_format_option(*cmd, c->format);
    cmd->add_option("--out", c->out, "Also write eval.json and eval.txt here");
    cmd->callback([c, io, &action] { action = [c, io] { return do_eval(*c, io); }; });
  }
  {
    auto c = std::make_shared<CompareCmd>();
    auto* cmd = app.add_subcommand("compare", "Pairwise Cohen's kappa between prediction files");
    cmd->add_option("runs", c->runs, "Prediction files, optionally NAME=path")->required();
    add_format_option(*cmd, c->format);
    cmd->add_option("--out", c->out, "Also write kappa.json and kappa.txt here");
    cmd->callback([c, io, &action] { action = [c, io] { return do_compare(*c, io); }; });
  }
  {
    auto c = std::make_shared<BaselineCmd>();
    auto* cmd = app.add_subcommand("baselines", "Majority, random and lexicon baselines");
    c->dataset.add_to(*cmd);
    cmd->add_option("--prior", c->prior, "Positive rate of the random baseline "
                                         "(default: the gold rate)");
    cmd->add_option("--seeds", c->seeds, "Seeds for the random-baseline spread")
        ->capture_default_str();
    cmd->add_option("--seed", c->seed, "First seed");
    cmd->add_option("--word-list", c->word_list, "Word list for the lexicon baseline");
    add_format_option(*cmd, c->format);
    cmd->add_option("--out", c->out, "Also write baselines.json and baselines.txt here");
    cmd->callback([c, io, &action] { action = [c, io] { return do_baseline(*c, io); }; });
  }
}

}  // namespace figura::cli
