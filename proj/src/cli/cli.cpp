#include "figura/cli/cli.hpp"

#include <ostream>

#include "common.hpp"
#include "figura/audit/worksheet.hpp"
#include "figura/data/sample.hpp"
#include "figura/llm/errors.hpp"
#include "figura/metrics/evaluate.hpp"

namespace figura::cli {
namespace {

using nlohmann::json;

int report(std::ostream& err, int code, std::string_view kind, const std::string& message,
           json details = json::object()) {
  json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
  for (auto& [k, v] : details.items()) j[k] = v;
  err << j.dump() << "\n";
  return code;
}

// Maps every module error onto an exit code and an error object on stderr.
int guarded(const Action& action, std::ostream& err) {
  try {
    return action();
  } catch (const CorruptEntry& e) {
    return report(err, kExitCache, "CorruptEntry", e.what(), {{"digest", e.digest()}});
  } catch (const llm::CacheMiss& e) {
    return report(err, kExitCache, "CacheMiss", e.what(), {{"digest", e.digest()->hex()}});
  } catch (const llm::GatewayError& e) {
    json d = {{"kind", llm::to_string(e.kind())}};
    if (e.digest()) d["digest"] = e.digest()->hex();
    return report(err, kExitIo, "GatewayError", e.what(), d);
  } catch (const metrics::AlignmentError& e) {
    return report(err, kExitMetric, "AlignmentError", e.what(),
                  {{"unmatched_predictions", e.unmatched_predictions()},
                   {"unmatched_gold", e.unmatched_gold()}});
  } catch (const metrics::MetricError& e) {
    return report(err, kExitMetric, "MetricError", e.what());
  } catch (const audit::EmptyJudgments& e) {
    return report(err, kExitMetric, "EmptyJudgments", e.what());
  } catch (const audit::WorksheetError& e) {
    return report(err, kExitIo, "WorksheetError", e.what());
  } catch (const data::NTooLarge& e) {
    return report(err, kExitIo, "NTooLarge", e.what());
  } catch (const data::SchemaMismatch& e) {
    return report(err, kExitIo, "SchemaMismatch", e.what(),
                  {{"dataset", data::to_string(e.dataset())},
                   {"line", e.line()},
                   {"found_fields", e.found_fields()}});
  } catch (const data::ParseError& e) {
    return report(err, kExitIo, "ParseError", e.what(), {{"line", e.line()}});
  } catch (const engine::PatchConflict& e) {
    return report(err, kExitIo, "PatchConflict", e.what());
  } catch (const engine::ConfigError& e) {
    return report(err, kExitIo, "ConfigError", e.what());
  } catch (const text::LexiconError& e) {
    return report(err, kExitIo, "LexiconError", e.what(), {{"line", e.line()}});
  } catch (const ManifestMismatch& e) {
    return report(err, kExitIo, "ManifestMismatch", e.what());
  } catch (const UsageError& e) {
    return report(err, kExitIo, "UsageError", e.what());
  } catch (const IoError& e) {
    return report(err, kExitIo, "IOError", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return report(err, kExitIo, "IOError", e.what());
  } catch (const std::ios_base::failure& e) {
    return report(err, kExitIo, "IOError", e.what());
  } catch (const nlohmann::json::exception& e) {
    return report(err, kExitIo, "ParseError", e.what());
  } catch (const std::invalid_argument& e) {
    return report(err, kExitIo, "InvalidArgument", e.what());
  } catch (const std::exception& e) {
    return report(err, kExitIo, "Error", e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"figura: protocol-driven metaphor identification with auditable rationales",
               "figura"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Action action;
  const Streams io{out, err};
  add_run_command(app, io, action);
  add_eval_commands(app, io, action);
  add_audit_command(app, io, action);
  add_cache_command(app, io, action);
  add_data_commands(app, io, action);

  std::vector<std::string> storage{"figura"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report(err, kExitIo, "UsageError", e.what());
  }
  if (!action) return report(err, kExitIo, "UsageError", "no command given");
  return guarded(action, err);
}

}  // namespace figura::cli
