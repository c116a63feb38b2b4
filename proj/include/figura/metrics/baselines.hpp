#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "figura/data/instance.hpp"
#include "figura/metrics/prf1.hpp"

namespace figura::metrics {

// Every prediction is the majority gold class; a tie goes to negative.
std::vector<Pred> baseline_majority(std::span<const std::uint8_t> gold);

// Positive when SplitMix64(seed).uniform() < prior, one draw per instance.
// Throws std::invalid_argument unless 0 <= prior <= 1.
std::vector<Pred> baseline_random(std::size_t n, double prior, std::uint64_t seed);

// One prediction per gold token, in instance then token order: positive iff
// the surface is in the lexicon. Non-token instances are skipped.
std::vector<Pred> baseline_lexicon(const std::vector<data::GoldInstance>& instances,
                                   const std::set<std::string>& lexicon);

// Gold labels of every token (MRW positive), in the order baseline_lexicon uses.
std::vector<std::uint8_t> token_gold(const std::vector<data::GoldInstance>& instances);

// Reads one word per line, '#' comments allowed.
std::set<std::string> load_word_list(const std::string& path);

struct RandomBaselineSummary {
  double single_draw_f1 = 0.0;  // first seed
  double mean_f1 = 0.0;
  double stdev_f1 = 0.0;  // sample standard deviation
  double min_f1 = 0.0;
  double max_f1 = 0.0;
  std::vector<std::uint64_t> seeds;
};

// F1 of baseline_random for each seed. Throws std::invalid_argument on an
// empty seed list.
RandomBaselineSummary random_baseline_summary(std::span<const std::uint8_t> gold, double prior,
                                              const std::vector<std::uint64_t>& seeds);

}  // namespace figura::metrics
