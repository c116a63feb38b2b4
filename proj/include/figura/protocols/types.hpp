#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace figura::protocols {

// Closed conceptual-domain taxonomy for tenors and vehicles.
enum class DomainLabel {
  Human,
  Animal,
  Plant,
  Object,
  NaturalPhenomenon,
  Abstract,
  Event,
  Place,
  Body,
  Other,
};

inline constexpr std::array<DomainLabel, 10> kAllDomains = {
    DomainLabel::Human,  DomainLabel::Animal,   DomainLabel::Plant, DomainLabel::Object,
    DomainLabel::NaturalPhenomenon, DomainLabel::Abstract, DomainLabel::Event,
    DomainLabel::Place,  DomainLabel::Body,     DomainLabel::Other};

std::string_view to_string(DomainLabel label);
std::optional<DomainLabel> parse_domain(std::string_view name);

// [start, end) in code points, with the covered text.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;

  bool overlaps(const CharSpan& other) const noexcept {
    return start < other.end && other.start < end;
  }
  bool operator==(const CharSpan&) const = default;
};

enum class BasicSource { Dictionary, LlmEnumerated };
enum class ImplicitMetaphor { None, Ellipsis, Substitution };

std::string_view to_string(BasicSource source);
std::string_view to_string(ImplicitMetaphor kind);

// Contextual vs basic meaning of one candidate word. The two flags stay unset
// until the contrast assessment has run.
struct MeaningPair {
  std::size_t token_index = 0;
  std::string word;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string contextual;
  std::string basic;
  BasicSource basic_source = BasicSource::LlmEnumerated;
  std::optional<bool> contrasts;
  std::optional<bool> comprehensible;
  ImplicitMetaphor implicit = ImplicitMetaphor::None;

  bool operator==(const MeaningPair&) const = default;
};

struct ConceptTriple {
  CharSpan tenor;
  CharSpan vehicle;
  std::string ground;  // empty when the shared property is implicit
  std::optional<DomainLabel> tenor_domain;
  std::optional<DomainLabel> vehicle_domain;
  std::optional<bool> coherent;

  bool operator==(const ConceptTriple&) const = default;
};

enum class Valence { Positive, Negative, Neutral, Mixed };

std::string_view to_string(Valence v);
std::optional<Valence> parse_valence(std::string_view name);

// literal/figurative valences are present exactly when incongruent_span is.
struct ValenceAssessment {
  Valence sentence_valence = Valence::Neutral;
  std::optional<CharSpan> incongruent_span;
  std::optional<Valence> literal_valence;
  std::optional<Valence> figurative_valence;
  bool resolvable = false;

  bool operator==(const ValenceAssessment&) const = default;
};

struct ComparisonConstruct {
  CharSpan marker;
  CharSpan tenor;
  CharSpan vehicle;
  std::optional<DomainLabel> tenor_domain;
  std::optional<DomainLabel> vehicle_domain;
  std::optional<bool> cross_domain;

  bool operator==(const ComparisonConstruct&) const = default;
};

}  // namespace figura::protocols
