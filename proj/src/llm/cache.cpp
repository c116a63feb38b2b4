#include "figura/llm/cache.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace figura::llm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kIndexFile = "index.tsv";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json entry_to_json(const CacheEntry& entry) {
  json slots = json::object();
  for (const auto& [k, v] : entry.request.slots) slots[k] = v;
  return json{{"digest", entry.digest.hex()},
              {"template_id", entry.request.template_id},
              {"slots", slots},
              {"temperature", entry.request.temperature},
              {"max_tokens", entry.request.max_tokens},
              {"schema_id", entry.request.schema_id},
              {"raw_text", entry.raw_text},
              {"response_sha256", sha256(entry.raw_text).hex()},
              {"created_at", entry.created_at}};
}

CacheEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("entry is not a JSON object");
  CacheEntry e;
  try {
    e.request.template_id = j.at("template_id").get<std::string>();
    for (const auto& [k, v] : j.at("slots").items()) e.request.slots[k] = v.get<std::string>();
    e.request.temperature = j.at("temperature").get<double>();
    e.request.max_tokens = j.at("max_tokens").get<int>();
    e.request.schema_id = j.at("schema_id").get<std::string>();
    e.raw_text = j.at("raw_text").get<std::string>();
    e.created_at = j.value("created_at", std::string{});
    const auto stored = Digest::from_hex(j.at("digest").get<std::string>());
    if (!stored) throw std::runtime_error("malformed digest");
    e.digest = *stored;
    const auto response_sha = j.at("response_sha256").get<std::string>();
    if (response_sha != sha256(e.raw_text).hex()) {
      throw std::runtime_error("raw_text does not match response_sha256");
    }
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("malformed entry: ") + ex.what());
  }
  if (cache_key(e.request) != e.digest) {
    throw std::runtime_error("digest does not match request");
  }
  return e;
}

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  std::unique_lock lock(mutex_);
  load_locked();
}

void ResponseCache::load_locked() {
  entries_.clear();
  issues_.clear();
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir_)) {
    if (de.is_regular_file() && de.path().extension() == ".json") files.push_back(de.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    try {
      auto entry = entry_from_json(json::parse(read_file(path)));
      if (entry.digest.hex() != path.stem().string()) {
        throw std::runtime_error("file name does not match digest");
      }
      entries_.emplace(entry.digest, std::move(entry));
    } catch (const std::exception& ex) {
      issues_.push_back({name, ex.what()});
    }
  }
}

void ResponseCache::reload() {
  std::unique_lock lock(mutex_);
  load_locked();
}

std::optional<CacheEntry> ResponseCache::find(const Digest& digest) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(digest);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool ResponseCache::contains(const Digest& digest) const {
  std::shared_lock lock(mutex_);
  return entries_.contains(digest);
}

void ResponseCache::write_entry_locked(const CacheEntry& entry) {
  const std::string hex = entry.digest.hex();
  const fs::path target = dir_ / (hex + ".json");
  const fs::path tmp = dir_ / (hex + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << entry_to_json(entry).dump(2) << '\n';
  }
  fs::rename(tmp, target);
  std::ofstream index(dir_ / kIndexFile, std::ios::binary | std::ios::app);
  index << hex << '\t' << entry.request.template_id << '\t' << entry.created_at << '\n';
}

bool ResponseCache::record(const LLMRequest& request, const std::string& raw_text) {
  CacheEntry entry{cache_key(request), request, raw_text, utc_timestamp()};
  std::unique_lock lock(mutex_);
  if (entries_.contains(entry.digest)) return false;
  write_entry_locked(entry);
  entries_.emplace(entry.digest, std::move(entry));
  return true;
}

std::vector<Digest> ResponseCache::digests() const {
  std::shared_lock lock(mutex_);
  std::vector<Digest> out;
  out.reserve(entries_.size());
  for (const auto& [d, _] : entries_) out.push_back(d);
  return out;
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::vector<CacheIssue> ResponseCache::verify() const {
  std::shared_lock lock(mutex_);
  return issues_;
}

void ResponseCache::export_archive(const fs::path& archive) const {
  std::shared_lock lock(mutex_);
  std::ofstream out(archive, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + archive.string());
  for (const auto& [_, entry] : entries_) out << entry_to_json(entry).dump() << '\n';
}

std::size_t ResponseCache::import_archive(const fs::path& archive) {
  std::ifstream in(archive, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + archive.string());
  std::vector<CacheEntry> incoming;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      incoming.push_back(entry_from_json(json::parse(line)));
    } catch (const std::exception& ex) {
      throw std::runtime_error(archive.string() + ":" + std::to_string(lineno) + ": " +
                               ex.what());
    }
  }
  std::unique_lock lock(mutex_);
  std::size_t added = 0;
  for (auto& entry : incoming) {
    if (entries_.contains(entry.digest)) continue;
    write_entry_locked(entry);
    entries_.emplace(entry.digest, std::move(entry));
    ++added;
  }
  return added;
}

}  // namespace figura::llm
