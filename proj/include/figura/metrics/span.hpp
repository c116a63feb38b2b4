#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace figura::metrics {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  bool operator==(const Span&) const = default;
};

// overlap1: a match needs at least one shared character and earns full
// credit. proportional: same matching, but a matched pair earns
// overlap/|pred| toward precision and overlap/|gold| toward recall.
enum class SpanMatch { Overlap1, Proportional };

std::string_view to_string(SpanMatch m);
std::optional<SpanMatch> parse_span_match(std::string_view s);

// Sums of per-pair credit; counts of spans on each side.
struct SpanCounts {
  double pred_credit = 0.0;
  double gold_credit = 0.0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;

  SpanCounts& operator+=(const SpanCounts& o);
};

struct SpanScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  SpanCounts counts;
};

// One instance. Predicted spans are visited in reading order (start, then
// end); each takes the first still-unmatched gold span, in reading order,
// that it overlaps. Throws InvalidSpan when start >= end.
SpanCounts match_spans(std::vector<Span> pred, std::vector<Span> gold,
                       SpanMatch mode = SpanMatch::Overlap1);

// F1 from accumulated counts. With no spans on either side the score is 1.
SpanScore span_score(const SpanCounts& counts);

// match_spans followed by span_score.
double span_partial_f1(const std::vector<Span>& pred, const std::vector<Span>& gold,
                       SpanMatch mode = SpanMatch::Overlap1);

}  // namespace figura::metrics
