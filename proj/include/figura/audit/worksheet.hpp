#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "figura/engine/pipeline.hpp"

namespace figura::audit {

inline constexpr std::string_view kWorksheetHeader =
    "source_id,protocol,decision,rationale,verdict,judge_id";

enum class Verdict { Correct, PartiallyCorrect, Incorrect };
std::string_view to_string(Verdict v);  // correct, partially_correct, incorrect
std::optional<Verdict> parse_verdict(std::string_view s);

// A row of a filled-in worksheet. `decision` is the label, suffixed with
// "@<token index>" for token-level decisions.
struct RationaleJudgment {
  std::string source_id;
  std::string protocol;
  std::string decision;
  Verdict verdict = Verdict::Incorrect;
  std::string judge_id;
};

class WorksheetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyJudgments : public std::invalid_argument {
 public:
  EmptyJudgments() : std::invalid_argument("no judgments to score") {}
};

std::string decision_cell(const engine::RationaleRecord& record);

// CSV worksheet for n records picked by data::sample_indices(records, n,
// seed), in record order, with blank verdict and judge columns. The rationale
// cell holds the sentence text (when `texts` has it), the triggering step,
// confidence and summary. Throws data::NTooLarge.
std::string export_rationale_sample(const std::vector<engine::RationaleRecord>& records,
                                    std::size_t n, std::uint64_t seed,
                                    const std::map<std::string, std::string>& texts = {});

// Parses a filled worksheet. Every row needs a verdict from the closed set.
std::vector<RationaleJudgment> parse_worksheet(std::string_view csv);

// (correct + 0.5 * partially_correct) / rows, where a row is one
// (source_id, protocol, decision) and its verdicts are averaged over judges
// first. Throws EmptyJudgments.
double score_rationales(const std::vector<RationaleJudgment>& judgments);

}  // namespace figura::audit
