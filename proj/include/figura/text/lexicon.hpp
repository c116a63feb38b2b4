#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "figura/text/token.hpp"

namespace figura::text {

struct LexiconEntry {
  std::uint64_t frequency = 0;
  PosTag pos = PosTag::Other;
};

class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::string origin, std::size_t line, const std::string& reason);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Word -> (frequency, default POS). Immutable once constructed.
//
// File format: UTF-8, one `word<TAB>frequency<TAB>POS` entry per line; blank
// lines and lines starting with '#' are skipped. Duplicate words are rejected.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::pair<std::string, LexiconEntry>>& entries);

  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::istream& in, const std::string& origin = "<stream>");

  const LexiconEntry* find(std::u32string_view word) const;
  const LexiconEntry* find(std::string_view utf8_word) const;

  std::size_t size() const noexcept { return entries_.size(); }
  // Longest entry, in code points.
  std::size_t max_word_length() const noexcept { return max_length_; }

 private:
  std::unordered_map<std::u32string, LexiconEntry> entries_;
  std::size_t max_length_ = 0;
};

}  // namespace figura::text
