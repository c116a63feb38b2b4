#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <cstdlib>

#include "figura/llm/backend.hpp"
#include "figura/llm/errors.hpp"

namespace figura::llm {

using nlohmann::json;

LiveSettings LiveSettings::from_environment() {
  LiveSettings s;
  if (const char* key = std::getenv("FIGURA_API_KEY")) s.api_key = key;
  if (const char* base = std::getenv("FIGURA_API_BASE")) s.base_url = base;
  if (const char* model = std::getenv("FIGURA_MODEL")) s.model = model;
  return s;
}

LiveBackend::LiveBackend(LiveSettings settings) : settings_(std::move(settings)) {}

std::string LiveBackend::complete(const LLMRequest& request, const Digest& digest,
                                  const std::string& prompt) {
  if (settings_.api_key.empty()) {
    throw TransportError("live backend needs FIGURA_API_KEY", digest);
  }
  httplib::Client client(settings_.base_url);
  client.set_connection_timeout(settings_.timeout_seconds);
  client.set_read_timeout(settings_.timeout_seconds);
  client.set_bearer_token_auth(settings_.api_key);

  const json body{{"model", settings_.model},
                  {"temperature", request.temperature},
                  {"max_tokens", request.max_tokens},
                  {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  const auto res = client.Post("/v1/chat/completions", body.dump(), "application/json");
  if (!res) {
    throw TransportError("request failed: " + httplib::to_string(res.error()), digest);
  }
  if (res->status != 200) {
    throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200),
                         digest);
  }
  try {
    return json::parse(res->body).at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& ex) {
    throw TransportError(std::string("unexpected response body: ") + ex.what(), digest);
  }
}

}  // namespace figura::llm
