#include "figura/metrics/span.hpp"

#include <algorithm>

#include "figura/metrics/errors.hpp"

namespace figura::metrics {

std::string_view to_string(SpanMatch m) {
  return m == SpanMatch::Overlap1 ? "overlap1" : "proportional";
}

std::optional<SpanMatch> parse_span_match(std::string_view s) {
  if (s == "overlap1") return SpanMatch::Overlap1;
  if (s == "proportional") return SpanMatch::Proportional;
  return std::nullopt;
}

SpanCounts& SpanCounts::operator+=(const SpanCounts& o) {
  pred_credit += o.pred_credit;
  gold_credit += o.gold_credit;
  n_pred += o.n_pred;
  n_gold += o.n_gold;
  return *this;
}

SpanCounts match_spans(std::vector<Span> pred, std::vector<Span> gold, SpanMatch mode) {
  for (const auto& s : pred) {
    if (s.start >= s.end) throw InvalidSpan(s.start, s.end);
  }
  for (const auto& s : gold) {
    if (s.start >= s.end) throw InvalidSpan(s.start, s.end);
  }
  const auto reading = [](const Span& a, const Span& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  };
  std::stable_sort(pred.begin(), pred.end(), reading);
  std::stable_sort(gold.begin(), gold.end(), reading);

  SpanCounts c;
  c.n_pred = pred.size();
  c.n_gold = gold.size();
  std::vector<bool> used(gold.size(), false);
  for (const auto& p : pred) {
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (used[g]) continue;
      const auto lo = std::max(p.start, gold[g].start);
      const auto hi = std::min(p.end, gold[g].end);
      if (hi <= lo) continue;
      used[g] = true;
      if (mode == SpanMatch::Overlap1) {
        c.pred_credit += 1.0;
        c.gold_credit += 1.0;
      } else {
        const auto overlap = static_cast<double>(hi - lo);
        c.pred_credit += overlap / static_cast<double>(p.end - p.start);
        c.gold_credit += overlap / static_cast<double>(gold[g].end - gold[g].start);
      }
      break;
    }
  }
  return c;
}

SpanScore span_score(const SpanCounts& counts) {
  SpanScore s;
  s.counts = counts;
  if (counts.n_pred == 0 && counts.n_gold == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  s.precision = counts.n_pred == 0 ? 0.0 : counts.pred_credit / static_cast<double>(counts.n_pred);
  s.recall = counts.n_gold == 0 ? 0.0 : counts.gold_credit / static_cast<double>(counts.n_gold);
  s.f1 = s.precision + s.recall == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

double span_partial_f1(const std::vector<Span>& pred, const std::vector<Span>& gold, SpanMatch mode) {
  return span_score(match_spans(pred, gold, mode)).f1;
}

}  // namespace figura::metrics
