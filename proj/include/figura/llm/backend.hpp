#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "figura/llm/cache.hpp"
#include "figura/llm/request.hpp"
#include "json.hpp"

namespace figura::llm {

class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendKind kind() const = 0;
  // Returns the raw response text or throws GatewayError.
  virtual std::string complete(const LLMRequest& request, const Digest& digest,
                               const std::string& prompt) = 0;
};

// Serves recorded responses by digest; unknown digests raise CacheMiss.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(std::shared_ptr<const ResponseCache> cache);
  BackendKind kind() const override { return BackendKind::Replay; }
  std::string complete(const LLMRequest& request, const Digest& digest,
                       const std::string& prompt) override;

 private:
  std::shared_ptr<const ResponseCache> cache_;
};

// Fixture table for the stub backend. A request resolves to, in order:
//   1. the entry keyed by its exact digest;
//   2. among entries for its template_id whose `slots` constraints all equal
//      the request's slot values, the one with the most constraints (earliest
//      on ties). An entry with no constraints is the template default.
// With `render_slots`, `{slot}` placeholders in the response are filled from
// the request slots.
//
// JSON form: {"entries": [{"digest": hex, "response": text} |
//                         {"template_id": id, "slots": {...}, "response": text,
//                          "render_slots": bool}]}
class StubTable {
 public:
  struct Rule {
    std::string template_id;
    SlotMap match;
    std::string response;
    bool render_slots = false;
  };

  static StubTable from_json(const nlohmann::json& j);
  static StubTable load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  void add(Digest digest, std::string response);
  void add(std::string template_id, SlotMap match, std::string response,
           bool render_slots = false);
  // Appends every entry of `other` after this table's entries.
  void merge(const StubTable& other);

  std::optional<std::string> lookup(const LLMRequest& request, const Digest& digest) const;
  std::size_t size() const noexcept;

 private:
  std::map<Digest, std::string> by_digest_;
  std::map<std::string, std::vector<Rule>, std::less<>> rules_;
  std::size_t rule_count_ = 0;
};

class StubBackend final : public Backend {
 public:
  explicit StubBackend(StubTable table);
  BackendKind kind() const override { return BackendKind::Stub; }
  std::string complete(const LLMRequest& request, const Digest& digest,
                       const std::string& prompt) override;
  const StubTable& table() const noexcept { return table_; }

 private:
  StubTable table_;
};

// OpenAI-compatible chat-completions endpoint.
struct LiveSettings {
  std::string base_url = "https://api.openai.com";
  std::string model = "gpt-4-0613";
  std::string api_key;
  int timeout_seconds = 120;

  // FIGURA_API_KEY (required), FIGURA_API_BASE, FIGURA_MODEL.
  static LiveSettings from_environment();
};

class LiveBackend final : public Backend {
 public:
  explicit LiveBackend(LiveSettings settings);
  BackendKind kind() const override { return BackendKind::Live; }
  std::string complete(const LLMRequest& request, const Digest& digest,
                       const std::string& prompt) override;

 private:
  LiveSettings settings_;
};

}  // namespace figura::llm
