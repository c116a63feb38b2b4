#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "figura/data/instance.hpp"
#include "figura/engine/config.hpp"
#include "figura/llm/backend.hpp"
#include "figura/llm/cache.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/text/lexicon.hpp"
#include "figura/text/token.hpp"

namespace figura::testing {

namespace fs = std::filesystem;

fs::path fixture(const std::string& name);
fs::path config_file(const std::string& name);
fs::path data_file(const std::string& name);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

const text::Lexicon& bundled_lexicon();
std::shared_ptr<const text::Lexicon> bundled_lexicon_ptr();

// Segments and tags with the bundled lexicon.
text::Sentence prepare(const std::string& text, const std::string& source_id = "s");
std::vector<text::Sentence> prepare_all(const std::vector<data::GoldInstance>& instances);

const llm::StubTable& stub_table();
std::shared_ptr<llm::Gateway> stub_gateway(std::shared_ptr<llm::ResponseCache> cache = nullptr);
std::shared_ptr<llm::Gateway> stub_gateway_for(const engine::ProtocolConfig& config,
                                               std::shared_ptr<llm::ResponseCache> cache = nullptr);
std::shared_ptr<llm::Gateway> replay_gateway_for(const engine::ProtocolConfig& config,
                                                 std::shared_ptr<llm::ResponseCache> cache);

std::string read_text(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace figura::testing
