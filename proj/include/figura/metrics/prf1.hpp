#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace figura::metrics {

struct PRF1Report {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  std::size_t abstain_count = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const PRF1Report&) const = default;
};

// Binary outcome of one prediction.
enum class Pred : std::uint8_t { Negative, Positive, Abstain };

// Fills the ratios from the four counts. Undefined precision or recall is 0
// and so is F1 when P + R == 0; accuracy of an empty set is 0.
PRF1Report finish_report(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
                         std::size_t abstain_count);

// gold[i] is 1 for a positive instance, 0 otherwise. Abstentions count as
// negative predictions and are tallied separately. Throws LengthMismatch.
PRF1Report prf1(std::span<const Pred> preds, std::span<const std::uint8_t> gold);

// Label-string form: `positive` marks positives, `abstain` marks abstentions,
// anything else is negative.
PRF1Report prf1(const std::vector<std::string>& preds, const std::vector<std::string>& gold,
                std::string_view positive, std::string_view abstain = "ABSTAIN");

}  // namespace figura::metrics
