#include "figura/text/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <stdexcept>

#include "figura/text/utf8.hpp"

namespace figura::text {

namespace {

char32_t fold_width(char32_t cp) {
  if (cp >= 0xFF01 && cp <= 0xFF5E) return cp - 0xFEE0;
  if (cp == 0x3000) return U' ';
  return cp;
}

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  const auto input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  const icu::UnicodeString composed = normalizer->normalize(input, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalization failed");
  std::string out;
  composed.toUTF8String(out);
  return out;
}

bool is_terminator(char32_t cp) {
  switch (cp) {
    case U'。':
    case U'！':
    case U'？':
    case U'…':
    case U'!':
    case U'?':
      return true;
    default:
      return false;
  }
}

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'”':
    case U'’':
    case U'"':
    case U'\'':
    case U'」':
    case U'』':
    case U'）':
    case U')':
    case U'】':
    case U'》':
    case U'〉':
    case U']':
    case U'］':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string normalize(std::string_view raw) {
  std::u32string folded = to_u32(raw);
  for (auto& cp : folded) cp = fold_width(cp);

  const std::u32string composed = to_u32(nfc(to_utf8(folded)));

  std::u32string out;
  out.reserve(composed.size());
  bool pending_space = false;
  for (char32_t cp : composed) {
    if (is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  return to_utf8(out);
}

std::vector<Sentence> split_sentences(std::string_view text, std::string_view base_id) {
  const auto cps = to_u32(text);
  std::vector<Sentence> sentences;
  auto emit = [&](std::size_t start, std::size_t end) {
    Sentence s;
    const auto n = std::to_string(sentences.size());
    s.source_id = base_id.empty() ? n : std::string(base_id) + "." + n;
    s.text = to_utf8(std::u32string_view(cps).substr(start, end - start));
    sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_terminator(cps[i])) {
      ++i;
      continue;
    }
    while (i < cps.size() && is_terminator(cps[i])) ++i;
    while (i < cps.size() && is_closer(cps[i])) ++i;
    emit(start, i);
    start = i;
  }
  if (start < cps.size()) emit(start, cps.size());
  return sentences;
}

}  // namespace figura::text
