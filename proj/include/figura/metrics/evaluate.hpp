#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "figura/data/instance.hpp"
#include "figura/data/predictions.hpp"
#include "figura/metrics/bootstrap.hpp"
#include "figura/metrics/errors.hpp"
#include "figura/metrics/kappa.hpp"
#include "figura/metrics/prf1.hpp"
#include "figura/metrics/span.hpp"

namespace figura::metrics {

// Predictions and gold (or two prediction files) do not cover the same ids.
class AlignmentError : public MetricError {
 public:
  AlignmentError(std::vector<std::string> unmatched_predictions,
                 std::vector<std::string> unmatched_gold);
  const std::vector<std::string>& unmatched_predictions() const noexcept { return preds_; }
  const std::vector<std::string>& unmatched_gold() const noexcept { return gold_; }

 private:
  std::vector<std::string> preds_;
  std::vector<std::string> gold_;
};

struct EvalOptions {
  SpanMatch span_match = SpanMatch::Overlap1;
  std::size_t iterations = 0;  // bootstrap iterations; 0 skips the interval
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SpanRoleScore {
  std::string role;
  SpanScore score;
};

struct EvalReport {
  std::string level;  // "token" or "sentence"
  PRF1Report overall;
  std::optional<BootstrapResult> f1_interval;
  std::vector<std::pair<std::string, PRF1Report>> by_register;  // sorted by register
  std::vector<SpanRoleScore> spans;
  SpanMatch span_match = SpanMatch::Overlap1;
};

// Token-level when the gold is token-labelled and the predictions are token
// targets: each predicted token is aligned to the gold token it overlaps
// most (ties to the earlier one) and a gold token is positive when any
// aligned prediction is, abstained when any aligned prediction abstained and
// none is positive, negative otherwise (including gold tokens no prediction
// reaches). Otherwise sentence-level: token gold is converted with the
// any-MRW rule, and a sentence's prediction is positive when any of its
// predictions is. Gold sentence label "other" is negative.
//
// Span scores are computed per role for gold carrying spans; unlocated spans
// are located at the first occurrence of their text.
//
// Throws AlignmentError when a prediction names an unknown source id or a
// sentence-level gold instance has no prediction.
EvalReport evaluate(const std::vector<data::Prediction>& predictions,
                    const std::vector<data::GoldInstance>& gold, const EvalOptions& options = {});

// Sentence-level outcome per source id, using the rule above.
std::map<std::string, Pred> sentence_outcomes(const std::vector<data::Prediction>& predictions);

// Pairwise kappa between prediction files at sentence level, with abstention
// read as a negative. Every file must cover the same source ids.
KappaMatrix compare_runs(
    const std::vector<std::pair<std::string, std::vector<data::Prediction>>>& runs);

}  // namespace figura::metrics
