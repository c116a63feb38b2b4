#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "figura/text/token.hpp"

namespace figura::text {

// NFC, full-width ASCII forms (U+FF01..U+FF5E, U+3000) folded to half-width,
// whitespace runs collapsed to one space, ends trimmed. Idempotent.
std::string normalize(std::string_view raw);

// Splits after sentence terminators (。！？… and their half-width !?), keeping
// the terminator run and any closing quotes/brackets in the preceding sentence.
// Concatenating the returned texts reproduces the input. Tokens are left empty;
// ids are "<base_id>.<n>" (or "<n>" when base_id is empty).
std::vector<Sentence> split_sentences(std::string_view text, std::string_view base_id = {});

}  // namespace figura::text
