#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "figura/cli/cli.hpp"
#include "figura/llm/templates.hpp"
#include "figura/text/segmenter.hpp"

namespace figura::testing {

fs::path fixture(const std::string& name) { return fs::path(FIGURA_FIXTURE_DIR) / name; }
fs::path config_file(const std::string& name) { return fs::path(FIGURA_CONFIG_DIR) / name; }
fs::path data_file(const std::string& name) { return fs::path(FIGURA_DATA_DIR) / name; }

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "figura-test-XXXXXX").string();
  if (::mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::shared_ptr<const text::Lexicon> bundled_lexicon_ptr() {
  static const auto lex =
      std::make_shared<const text::Lexicon>(text::Lexicon::load(data_file("lexicon.tsv")));
  return lex;
}

const text::Lexicon& bundled_lexicon() { return *bundled_lexicon_ptr(); }

text::Sentence prepare(const std::string& text, const std::string& source_id) {
  text::MaxMatchSegmenter seg(bundled_lexicon_ptr());
  return text::preprocess(text, source_id, seg, bundled_lexicon());
}

std::vector<text::Sentence> prepare_all(const std::vector<data::GoldInstance>& instances) {
  std::vector<text::Sentence> out;
  for (const auto& in : instances) out.push_back(prepare(in.text, in.source_id));
  return out;
}

const llm::StubTable& stub_table() {
  static const auto table = llm::StubTable::load(fixture("stub_table.json"));
  return table;
}

std::shared_ptr<llm::Gateway> stub_gateway(std::shared_ptr<llm::ResponseCache> cache) {
  auto registry = std::make_shared<const llm::TemplateRegistry>(llm::TemplateRegistry::builtin());
  return std::make_shared<llm::Gateway>(registry, std::make_shared<llm::StubBackend>(stub_table()),
                                        std::move(cache));
}

std::shared_ptr<llm::Gateway> stub_gateway_for(const engine::ProtocolConfig& config,
                                               std::shared_ptr<llm::ResponseCache> cache) {
  return std::make_shared<llm::Gateway>(engine::make_registry(config),
                                        std::make_shared<llm::StubBackend>(stub_table()),
                                        std::move(cache));
}

std::shared_ptr<llm::Gateway> replay_gateway_for(const engine::ProtocolConfig& config,
                                                 std::shared_ptr<llm::ResponseCache> cache) {
  return std::make_shared<llm::Gateway>(engine::make_registry(config),
                                        std::make_shared<llm::ReplayBackend>(cache), cache);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace figura::testing
