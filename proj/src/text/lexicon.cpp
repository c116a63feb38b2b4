#include "figura/text/lexicon.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "figura/text/utf8.hpp"

namespace figura::text {

LexiconError::LexiconError(std::string origin, std::size_t line, const std::string& reason)
    : std::runtime_error(origin + ":" + std::to_string(line) + ": " + reason), line_(line) {}

Lexicon::Lexicon(const std::vector<std::pair<std::string, LexiconEntry>>& entries) {
  for (const auto& [word, entry] : entries) {
    auto key = to_u32(word);
    if (key.empty()) throw std::invalid_argument("lexicon entry with empty word");
    max_length_ = std::max(max_length_, key.size());
    if (!entries_.emplace(std::move(key), entry).second) {
      throw std::invalid_argument("duplicate lexicon entry: " + word);
    }
  }
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(path.string(), 0, "cannot open lexicon");
  return parse(in, path.string());
}

Lexicon Lexicon::parse(std::istream& in, const std::string& origin) {
  std::vector<std::pair<std::string, LexiconEntry>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos || line.find('\t', tab2 + 1) != std::string::npos) {
      throw LexiconError(origin, lineno, "expected word<TAB>frequency<TAB>POS");
    }
    const std::string word = line.substr(0, tab1);
    const std::string_view freq_text(line.data() + tab1 + 1, tab2 - tab1 - 1);
    const std::string_view pos_text(line.data() + tab2 + 1, line.size() - tab2 - 1);

    LexiconEntry entry;
    const auto [ptr, ec] =
        std::from_chars(freq_text.data(), freq_text.data() + freq_text.size(), entry.frequency);
    if (ec != std::errc{} || ptr != freq_text.data() + freq_text.size()) {
      throw LexiconError(origin, lineno, "bad frequency '" + std::string(freq_text) + "'");
    }
    const auto pos = parse_pos_tag(pos_text);
    if (!pos) throw LexiconError(origin, lineno, "unknown POS '" + std::string(pos_text) + "'");
    entry.pos = *pos;
    if (word.empty()) throw LexiconError(origin, lineno, "empty word");
    rows.emplace_back(word, entry);
  }
  try {
    return Lexicon(rows);
  } catch (const std::invalid_argument& e) {
    throw LexiconError(origin, lineno, e.what());
  }
}

const LexiconEntry* Lexicon::find(std::u32string_view word) const {
  const auto it = entries_.find(std::u32string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

const LexiconEntry* Lexicon::find(std::string_view utf8_word) const {
  return find(to_u32(utf8_word));
}

}  // namespace figura::text
