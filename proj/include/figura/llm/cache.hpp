#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "figura/llm/digest.hpp"
#include "figura/llm/request.hpp"
#include "json.hpp"

namespace figura::llm {

struct CacheEntry {
  Digest digest;
  LLMRequest request;
  std::string raw_text;
  std::string created_at;  // not part of the digest
};

// One JSON object per entry: {digest, template_id, slots, temperature,
// max_tokens, schema_id, raw_text, response_sha256, created_at}.
// response_sha256 guards raw_text, which the request digest does not cover.
nlohmann::json entry_to_json(const CacheEntry& entry);

// Throws std::runtime_error describing the first problem: malformed fields,
// digest not matching the request, or raw_text not matching response_sha256.
CacheEntry entry_from_json(const nlohmann::json& j);

struct CacheIssue {
  std::string name;  // file name or archive line
  std::string reason;
};

// Append-only, content-addressed store of recorded exchanges:
//   <dir>/<digest-hex>.json   one file per exchange
//   <dir>/index.tsv           digest<TAB>template_id<TAB>created_at, appended per write
//
// Readers run concurrently; writers are serialized. An entry is never
// replaced once recorded. Entries failing verification are not served.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::optional<CacheEntry> find(const Digest& digest) const;
  bool contains(const Digest& digest) const;

  // Returns false (and leaves the store untouched) when the digest exists.
  bool record(const LLMRequest& request, const std::string& raw_text);

  std::vector<Digest> digests() const;
  std::size_t size() const;

  // Re-reads the directory, picking up external changes.
  void reload();

  // Entries that failed to load: bad JSON, digest mismatch, corrupted text.
  std::vector<CacheIssue> verify() const;

  // JSON-lines bundle of all valid entries in digest order.
  void export_archive(const std::filesystem::path& archive) const;
  // Records every entry of a bundle; returns the number newly added. Throws
  // std::runtime_error naming the line of the first corrupt entry.
  std::size_t import_archive(const std::filesystem::path& archive);

 private:
  void load_locked();
  void write_entry_locked(const CacheEntry& entry);

  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
  std::map<Digest, CacheEntry> entries_;
  std::vector<CacheIssue> issues_;
};

std::string utc_timestamp();

}  // namespace figura::llm
