#include "figura/llm/backend.hpp"

#include <fstream>
#include <stdexcept>

#include "figura/llm/errors.hpp"

namespace figura::llm {

using nlohmann::json;

ReplayBackend::ReplayBackend(std::shared_ptr<const ResponseCache> cache) : cache_(std::move(cache)) {
  if (!cache_) throw std::invalid_argument("replay backend requires a cache");
}

std::string ReplayBackend::complete(const LLMRequest&, const Digest& digest, const std::string&) {
  auto entry = cache_->find(digest);
  if (!entry) throw CacheMiss(digest);
  return std::move(entry->raw_text);
}

StubTable StubTable::from_json(const json& j) {
  StubTable table;
  const json& entries = j.is_array() ? j : j.at("entries");
  for (const auto& e : entries) {
    const auto response = e.at("response").get<std::string>();
    if (e.contains("digest")) {
      const auto d = Digest::from_hex(e.at("digest").get<std::string>());
      if (!d) throw std::invalid_argument("stub entry has malformed digest");
      table.add(*d, response);
      continue;
    }
    SlotMap match;
    if (e.contains("slots")) {
      for (const auto& [k, v] : e.at("slots").items()) match[k] = v.get<std::string>();
    }
    table.add(e.at("template_id").get<std::string>(), std::move(match), response,
              e.value("render_slots", false));
  }
  return table;
}

StubTable StubTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read stub table " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& ex) {
    throw std::runtime_error("malformed stub table " + path.string() + ": " + ex.what());
  }
}

json StubTable::to_json() const {
  json entries = json::array();
  for (const auto& [digest, response] : by_digest_) {
    entries.push_back({{"digest", digest.hex()}, {"response", response}});
  }
  for (const auto& [id, rules] : rules_) {
    for (const auto& rule : rules) {
      json e{{"template_id", id}, {"response", rule.response}};
      if (!rule.match.empty()) e["slots"] = rule.match;
      if (rule.render_slots) e["render_slots"] = true;
      entries.push_back(std::move(e));
    }
  }
  return json{{"entries", std::move(entries)}};
}

void StubTable::add(Digest digest, std::string response) {
  by_digest_.insert_or_assign(digest, std::move(response));
}

void StubTable::add(std::string template_id, SlotMap match, std::string response,
                    bool render_slots) {
  auto& bucket = rules_[template_id];
  bucket.push_back(Rule{std::move(template_id), std::move(match), std::move(response), render_slots});
  ++rule_count_;
}

void StubTable::merge(const StubTable& other) {
  for (const auto& [digest, response] : other.by_digest_) add(digest, response);
  for (const auto& [id, rules] : other.rules_) {
    for (const auto& rule : rules) add(rule.template_id, rule.match, rule.response, rule.render_slots);
  }
}

std::size_t StubTable::size() const noexcept { return by_digest_.size() + rule_count_; }

std::optional<std::string> StubTable::lookup(const LLMRequest& request, const Digest& digest) const {
  if (const auto it = by_digest_.find(digest); it != by_digest_.end()) return it->second;
  const auto bucket = rules_.find(request.template_id);
  if (bucket == rules_.end()) return std::nullopt;

  const Rule* best = nullptr;
  for (const auto& rule : bucket->second) {
    bool matches = true;
    for (const auto& [name, value] : rule.match) {
      const auto it = request.slots.find(name);
      if (it == request.slots.end() || it->second != value) {
        matches = false;
        break;
      }
    }
    if (matches && (best == nullptr || rule.match.size() > best->match.size())) best = &rule;
  }
  if (best == nullptr) return std::nullopt;
  if (!best->render_slots) return best->response;

  std::string out;
  const std::string& text = best->response;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      const auto close = text.find('}', i + 1);
      if (close != std::string::npos) {
        const auto it = request.slots.find(text.substr(i + 1, close - i - 1));
        if (it != request.slots.end()) {
          out += it->second;
          i = close;
          continue;
        }
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

StubBackend::StubBackend(StubTable table) : table_(std::move(table)) {}

std::string StubBackend::complete(const LLMRequest& request, const Digest& digest,
                                  const std::string&) {
  auto response = table_.lookup(request, digest);
  if (!response) throw FixtureMiss(digest, request.template_id);
  return std::move(*response);
}

}  // namespace figura::llm
