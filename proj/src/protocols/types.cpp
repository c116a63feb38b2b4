#include "figura/protocols/types.hpp"

namespace figura::protocols {

namespace {

constexpr std::array<std::string_view, 10> kDomainNames = {
    "HUMAN", "ANIMAL", "PLANT", "OBJECT", "NATURAL_PHENOMENON",
    "ABSTRACT", "EVENT", "PLACE", "BODY", "OTHER"};

constexpr std::array<std::string_view, 4> kValenceNames = {"positive", "negative", "neutral",
                                                           "mixed"};

}  // namespace

std::string_view to_string(DomainLabel label) {
  return kDomainNames[static_cast<std::size_t>(label)];
}

std::optional<DomainLabel> parse_domain(std::string_view name) {
  for (std::size_t i = 0; i < kDomainNames.size(); ++i) {
    if (kDomainNames[i] == name) return kAllDomains[i];
  }
  return std::nullopt;
}

std::string_view to_string(BasicSource source) {
  return source == BasicSource::Dictionary ? "dictionary" : "llm_enumerated";
}

std::string_view to_string(ImplicitMetaphor kind) {
  switch (kind) {
    case ImplicitMetaphor::None:
      return "none";
    case ImplicitMetaphor::Ellipsis:
      return "ellipsis";
    case ImplicitMetaphor::Substitution:
      return "substitution";
  }
  return "none";
}

std::string_view to_string(Valence v) { return kValenceNames[static_cast<std::size_t>(v)]; }

std::optional<Valence> parse_valence(std::string_view name) {
  for (std::size_t i = 0; i < kValenceNames.size(); ++i) {
    if (kValenceNames[i] == name) return static_cast<Valence>(i);
  }
  return std::nullopt;
}

}  // namespace figura::protocols
