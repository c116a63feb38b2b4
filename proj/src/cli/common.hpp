#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "figura/cli/cli.hpp"
#include "figura/data/dataset.hpp"
#include "figura/engine/config.hpp"
#include "figura/llm/cache.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/text/lexicon.hpp"
#include "figura/text/token.hpp"
#include "json.hpp"

namespace figura::cli {

namespace fs = std::filesystem;

using Action = std::function<int()>;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Usage problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A manifest input no longer matches the recorded checksum.
class ManifestMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by `cache verify` when an entry fails verification.
class CorruptEntry : public std::runtime_error {
 public:
  CorruptEntry(std::string digest, std::string reason)
      : std::runtime_error("corrupt cache entry " + digest + ": " + reason),
        digest_(std::move(digest)) {}
  const std::string& digest() const noexcept { return digest_; }

 private:
  std::string digest_;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct DatasetArgs {
  std::string name;
  std::string path;
  bool native = false;

  void add_to(CLI::App& app, bool required = true);
  data::DatasetName dataset_name() const;
  std::vector<data::GoldInstance> load() const;
};

struct BackendArgs {
  std::string backend = "stub";
  std::string stub_table;
  std::string cache_dir;

  void add_to(CLI::App& app);
};

struct Gateways {
  std::shared_ptr<llm::ResponseCache> cache;  // may be null
  // Builds a gateway for a config (its registry includes the config's templates).
  std::shared_ptr<llm::Gateway> make(const engine::ProtocolConfig& config) const;

  llm::BackendKind kind = llm::BackendKind::Stub;
  std::shared_ptr<llm::Backend> backend;
};

Gateways open_backend(const BackendArgs& args);

struct PreprocessArgs {
  std::string lexicon;
  bool gold_segmentation = false;
  unsigned threads = 1;

  void add_to(CLI::App& app);
  std::vector<text::Sentence> sentences(const std::vector<data::GoldInstance>& instances) const;
};

// --config, else the bundled config for --protocol.
fs::path resolve_config_path(const std::string& config_path, const std::string& protocol);
engine::ProtocolConfig load_protocol_config(const std::string& config_path,
                                            const std::string& protocol);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, std::string_view bytes);
std::string sha256_file(const fs::path& path);
std::string absolute_string(const std::string& path);

const std::string& default_lexicon_path();
const std::string& default_config_dir();
std::string tool_version();

// Each registers subcommands whose callbacks store the work in `action`.
void add_run_command(CLI::App& app, Streams io, Action& action);
void add_eval_commands(CLI::App& app, Streams io, Action& action);
void add_audit_command(CLI::App& app, Streams io, Action& action);
void add_cache_command(CLI::App& app, Streams io, Action& action);
void add_data_commands(CLI::App& app, Streams io, Action& action);

}  // namespace figura::cli
