#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "figura/text/lexicon.hpp"
#include "figura/text/normalize.hpp"
#include "figura/text/segmenter.hpp"
#include "figura/text/utf8.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace figura;
using namespace figura::text;

namespace {

Lexicon lexicon_of(std::initializer_list<std::pair<const char*, PosTag>> words) {
  std::vector<std::pair<std::string, LexiconEntry>> entries;
  for (const auto& [w, pos] : words) entries.push_back({w, LexiconEntry{1, pos}});
  return Lexicon(entries);
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_SUITE("text") {
  TEST_CASE("normalize folds full-width forms and collapses whitespace") {
    CHECK(normalize("") == "");
    CHECK(normalize("ＡＢ　Ｃ") == "AB C");
    CHECK(normalize("人生如梦") == "人生如梦");
    CHECK(normalize("  a \t\n b  ") == "a b");
  }

  TEST_CASE("normalize matches a width-fold table over the full-width block") {
    for (char32_t cp = 0xFF01; cp <= 0xFF5E; ++cp) {
      const std::string in = "x" + to_utf8(cp) + "y";
      const std::string expected = "x" + to_utf8(static_cast<char32_t>(cp - 0xFEE0)) + "y";
      CHECK(normalize(in) == expected);
    }
  }

  TEST_CASE("normalize is idempotent") {
    for (const char* s : {"ＡＢ　Ｃ", " 他的话 像一把刀 ", "Ｈｅｌｌｏ，　世界！", "é"}) {
      const auto once = normalize(s);
      CHECK(normalize(once) == once);
    }
  }

  TEST_CASE("split_sentences keeps terminators and closing quotes") {
    auto s = split_sentences("甲。乙！");
    REQUIRE(s.size() == 2);
    CHECK(s[0].text == "甲。");
    CHECK(s[1].text == "乙！");
    CHECK(s[0].source_id == "0");

    auto one = split_sentences("无标点", "doc");
    REQUIRE(one.size() == 1);
    CHECK(one[0].text == "无标点");
    CHECK(one[0].source_id == "doc.0");

    CHECK(split_sentences("").empty());

    auto q = split_sentences("他说：“走吧！”她没动。。");
    REQUIRE(q.size() == 2);
    CHECK(q[0].text == "他说：“走吧！”");
    CHECK(q[1].text == "她没动。。");
  }

  TEST_CASE("split_sentences concatenates back to the input") {
    const std::string text = "一。二？三!四…五";
    std::string joined;
    for (const auto& s : split_sentences(text)) joined += s.text;
    CHECK(joined == text);
  }

  TEST_CASE("forward maximum matching") {
    const auto lex = lexicon_of({{"人生", PosTag::Noun}, {"梦", PosTag::Noun}});
    CHECK(segment("", lex).empty());
    CHECK(surfaces(segment("人生如梦", lex)) == std::vector<std::string>{"人生", "如", "梦"});
    CHECK(surfaces(segment("像", lex)) == std::vector<std::string>{"像"});
    const auto toks = segment("人生如梦", lex);
    CHECK(covers_exactly("人生如梦", toks));
    CHECK(toks[2].char_start == 3);
    CHECK(toks[2].char_end == 4);
  }

  TEST_CASE("segmenter agrees with a brute-force matcher on random input") {
    const std::u32string alphabet = U"甲乙丙丁戊";
    std::mt19937_64 rng(11);
    for (int round = 0; round < 200; ++round) {
      std::set<std::u32string> words;
      std::vector<std::pair<std::string, LexiconEntry>> entries;
      const int n_words = 1 + static_cast<int>(rng() % 6);
      for (int w = 0; w < n_words; ++w) {
        std::u32string word;
        const int len = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < len; ++k) word += alphabet[rng() % alphabet.size()];
        if (words.insert(word).second) entries.push_back({to_utf8(word), LexiconEntry{}});
      }
      std::u32string text;
      const int len = static_cast<int>(rng() % 15);
      for (int k = 0; k < len; ++k) text += alphabet[rng() % alphabet.size()];

      std::vector<std::string> expected;
      for (const auto& piece : oracle::fmm(text, words)) expected.push_back(to_utf8(piece));
      CHECK(surfaces(segment(to_utf8(text), Lexicon(entries))) == expected);
    }
  }

  TEST_CASE("pos_tag uses punctuation, then lexicon, then OTHER") {
    const auto lex = lexicon_of({{"梦", PosTag::Noun}});
    auto tagged = pos_tag({{"梦", 0, 1}, {"。", 1, 2}, {"\xEF\xBF\xBD", 2, 3}}, lex);
    CHECK(tagged[0].pos == PosTag::Noun);
    CHECK(tagged[1].pos == PosTag::Punct);
    CHECK(tagged[2].pos == PosTag::Other);
  }

  TEST_CASE("preprocess normalizes, segments and tags") {
    const auto s = testing::prepare("他的话像一把刀", "k");
    CHECK(s.source_id == "k");
    CHECK(covers_exactly(s.text, s.tokens));
    REQUIRE(!s.tokens.empty());
    CHECK(s.tokens.back().surface == "刀");
    CHECK(s.tokens.back().pos == PosTag::Noun);
  }

  TEST_CASE("from_segmentation rejects surfaces that do not rebuild the text") {
    const auto& lex = testing::bundled_lexicon();
    auto s = from_segmentation("人生如梦", "x", {"人生", "如", "梦"}, lex);
    CHECK(s.tokens.size() == 3);
    CHECK_THROWS_AS(from_segmentation("人生如梦", "x", {"人生", "梦"}, lex), std::invalid_argument);
  }

  TEST_CASE("lexicon parsing rejects duplicates and bad lines") {
    std::istringstream good("# comment\n梦\t10\tNOUN\n\n人生\t5\tNOUN\n");
    const auto lex = Lexicon::parse(good);
    CHECK(lex.size() == 2);
    CHECK(lex.max_word_length() == 2);
    REQUIRE(lex.find(std::string_view("梦")) != nullptr);
    CHECK(lex.find(std::string_view("梦"))->frequency == 10);

    std::istringstream dup("梦\t1\tNOUN\n梦\t2\tNOUN\n");
    CHECK_THROWS_AS(Lexicon::parse(dup), LexiconError);
    std::istringstream bad("梦\tmany\tNOUN\n");
    CHECK_THROWS_AS(Lexicon::parse(bad), LexiconError);
  }

  TEST_CASE("utf8 helpers count code points") {
    CHECK(length("他的话") == 3);
    CHECK(slice("他的话像一把刀", 4, 7) == "一把刀");
    CHECK(to_utf8(to_u32("混合 mixed")) == "混合 mixed");
  }
}
