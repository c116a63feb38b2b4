#pragma once

// Independent reference implementations used to check the library. They are
// written from the metric definitions, not from the library code, and favour
// obviousness over speed.

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace figura::oracle {

// Kappa from an explicit contingency table in floating point.
double kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Greedy one-to-one matching: walk predictions in (start, end) order and give
// each the first free gold span, in the same order, sharing a character.
// Returns F1 with both-empty as 1.
double greedy_overlap_f1(std::vector<std::pair<int, int>> pred,
                         std::vector<std::pair<int, int>> gold);

// F1 counting only identical intervals as matches.
double exact_match_f1(const std::vector<std::pair<int, int>>& pred,
                      const std::vector<std::pair<int, int>>& gold);

// The generator re-stated: SplitMix64 with Lemire rejection and the
// substream rule seed' = next(seed ^ next(index)).
struct Mix {
  std::uint64_t s;
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);
};
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

struct Interval {
  double point = 0;
  double low = 0;
  double high = 0;
};

// Percentile bootstrap of F1 (abstain = 0 = negative, 1 = positive, 2 = abstain),
// 2.5% / 97.5% linear-interpolated quantiles, widened to include the point.
Interval bootstrap_f1(const std::vector<int>& preds, const std::vector<int>& gold,
                      std::size_t iterations, std::uint64_t seed);

// Sentence is metaphorical iff some token label is "MRW".
bool any_mrw(const std::vector<std::string>& token_labels);

// Forward maximum matching by trying every length from longest to one.
std::vector<std::u32string> fmm(const std::u32string& text, const std::set<std::u32string>& words);

}  // namespace figura::oracle
