#include "common.hpp"

namespace figura::cli {
namespace {

using nlohmann::json;

struct CacheCmd {
  std::string dir;
  std::string archive;
};

std::string digest_of(const std::string& issue_name) {
  const fs::path p(issue_name);
  return p.extension() == ".json" ? p.stem().string() : issue_name;
}

llm::ResponseCache open_existing(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError("cache directory not found: " + dir);
  return llm::ResponseCache(dir);
}

int do_list(const CacheCmd& c, Streams io) {
  const auto cache = open_existing(c.dir);
  for (const auto& d : cache.digests()) {
    const auto entry = cache.find(d);
    io.out << d.hex() << '\t' << entry->request.template_id << '\t' << entry->created_at << '\n';
  }
  return 0;
}

// Loading a cache recomputes every digest and response checksum.
int do_verify(const CacheCmd& c, Streams io) {
  const auto cache = open_existing(c.dir);
  const auto issues = cache.verify();
  json mismatches = json::array();
  for (const auto& i : issues)
    mismatches.push_back({{"digest", digest_of(i.name)}, {"reason", i.reason}});
  io.out << json{{"entries", cache.size()}, {"mismatches", mismatches}}.dump() << "\n";
  if (!issues.empty()) throw CorruptEntry(digest_of(issues.front().name), issues.front().reason);
  return 0;
}

int do_export(const CacheCmd& c, Streams io) {
  const auto cache = open_existing(c.dir);
  cache.export_archive(c.archive);
  io.out << json{{"exported", cache.size()}, {"archive", absolute_string(c.archive)}}.dump()
         << "\n";
  return 0;
}

int do_import(const CacheCmd& c, Streams io) {
  if (!fs::is_regular_file(c.archive)) throw IoError("archive not found: " + c.archive);
  fs::create_directories(c.dir);
  llm::ResponseCache cache(c.dir);
  std::size_t added = 0;
  try {
    added = cache.import_archive(c.archive);
  } catch (const std::runtime_error& e) {
    throw CorruptEntry(c.archive, e.what());
  }
  io.out << json{{"imported", added}, {"entries", cache.size()}}.dump() << "\n";
  return 0;
}

}  // namespace

void add_cache_command(CLI::App& app, Streams io, Action& action) {
  auto* cache_cmd = app.add_subcommand("cache", "Inspect and move the response cache");
  cache_cmd->require_subcommand(1);
  auto add = [&](const char* name, const char* help, bool archive, int (*fn)(const CacheCmd&, Streams)) {
    auto c = std::make_shared<CacheCmd>();
    auto* cmd = cache_cmd->add_subcommand(name, help);
    cmd->add_option("--cache-dir", c->dir, "Cache directory")->required();
    if (archive) cmd->add_option("--archive", c->archive, "Archive file (JSON lines)")->required();
    cmd->callback([c, io, fn, &action] { action = [c, io, fn] { return fn(*c, io); }; });
  };
  add("list", "One line per entry: digest, template, created_at", false, do_list);
  add("verify", "Recompute digests and checksums", false, do_verify);
  add("export", "Bundle all entries into one archive", true, do_export);
  add("import", "Record an archive's entries", true, do_import);
}

}  // namespace figura::cli
