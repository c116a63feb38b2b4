#include <algorithm>

#include "common.hpp"
#include "figura/data/adapters.hpp"
#include "figura/metrics/report.hpp"

namespace figura::cli {
namespace {

using nlohmann::json;

struct StatsCmd {
  std::vector<std::string> names;
  std::vector<std::string> paths;
  bool native = false;
  bool check_reference = false;
  std::string format = "text";
};

int do_stats(const StatsCmd& c, Streams io) {
  if (c.names.empty() || c.names.size() != c.paths.size())
    throw UsageError("give one --path per --dataset");
  struct Item {
    data::DatasetName name;
    data::DatasetStats stats;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < c.names.size(); ++i) {
    DatasetArgs d{c.names[i], c.paths[i], c.native};
    items.push_back({d.dataset_name(), data::stats(d.load())});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.name < b.name; });

  std::vector<metrics::StatsRow> rows;
  json j = json::array();
  std::vector<std::string> mismatched;
  for (const auto& it : items) {
    const std::string label_type(data::to_string(data::label_type_of(it.name)));
    rows.push_back({std::string(data::display_name(it.name)), it.stats, label_type});
    const bool matches = data::matches_reference(it.stats, data::reference_row(it.name));
    json row = metrics::to_json(it.stats);
    row["dataset"] = std::string(data::to_string(it.name));
    row["label_type"] = label_type;
    row["matches_reference"] = matches;
    j.push_back(std::move(row));
    if (!matches) mismatched.emplace_back(data::to_string(it.name));
  }
  if (c.format == "json")
    io.out << j.dump(2) << "\n";
  else
    io.out << metrics::format_stats_table(rows);
  if (c.check_reference && !mismatched.empty()) {
    io.err << json{{"error", "ReferenceMismatch"},
                   {"message", "counts differ from the published corpus sizes"},
                   {"datasets", mismatched}}
                  .dump()
           << "\n";
    return kExitMetric;
  }
  return 0;
}

struct ImportCmd {
  DatasetArgs dataset;
  std::string out;
};

int do_import(ImportCmd c, Streams io) {
  c.dataset.native = true;
  const auto instances = c.dataset.load();
  data::write_unified(fs::path(c.out), instances);
  io.out << json{{"instances", instances.size()}, {"out", absolute_string(c.out)}}.dump() << "\n";
  return 0;
}

}  // namespace

void add_data_commands(CLI::App& app, Streams io, Action& action) {
  {
    auto c = std::make_shared<StatsCmd>();
    auto* cmd = app.add_subcommand("stats", "Corpus statistics table");
    cmd->add_option("--dataset", c->names, "Corpus name (repeatable)")->required();
    cmd->add_option("--path", c->paths, "Corpus file, one per --dataset")->required();
    cmd->add_flag("--native", c->native, "Files are in native layouts");
    cmd->add_flag("--check-reference", c->check_reference,
                  "Exit 1 unless every row equals the published corpus sizes");
    cmd->add_option("--format", c->format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->callback([c, io, &action] { action = [c, io] { return do_stats(*c, io); }; });
  }
  {
    auto c = std::make_shared<ImportCmd>();
    auto* cmd = app.add_subcommand("import", "Convert a native corpus file to unified JSON lines");
    cmd->add_option("--dataset", c->dataset.name, "Corpus name")->required();
    cmd->add_option("--path", c->dataset.path, "Native corpus file")->required();
    cmd->add_option("--out", c->out, "Unified JSON-lines output")->required();
    cmd->callback([c, io, &action] { action = [c, io] { return do_import(*c, io); }; });
  }
}

}  // namespace figura::cli
