#include "figura/metrics/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "figura/data/prng.hpp"

namespace figura::metrics {

std::vector<Pred> baseline_majority(std::span<const std::uint8_t> gold) {
  const auto pos = static_cast<std::size_t>(std::count(gold.begin(), gold.end(), std::uint8_t{1}));
  const bool positive = pos > gold.size() - pos;
  return std::vector<Pred>(gold.size(), positive ? Pred::Positive : Pred::Negative);
}

std::vector<Pred> baseline_random(std::size_t n, double prior, std::uint64_t seed) {
  if (!(prior >= 0.0 && prior <= 1.0)) throw std::invalid_argument("prior must lie in [0, 1]");
  data::SplitMix64 rng(seed);
  std::vector<Pred> out(n);
  for (auto& p : out) p = rng.uniform() < prior ? Pred::Positive : Pred::Negative;
  return out;
}

std::vector<Pred> baseline_lexicon(const std::vector<data::GoldInstance>& instances,
                                   const std::set<std::string>& lexicon) {
  std::vector<Pred> out;
  for (const auto& in : instances) {
    if (!in.tokens) continue;
    for (const auto& t : *in.tokens) {
      out.push_back(lexicon.contains(t.surface) ? Pred::Positive : Pred::Negative);
    }
  }
  return out;
}

std::vector<std::uint8_t> token_gold(const std::vector<data::GoldInstance>& instances) {
  std::vector<std::uint8_t> out;
  for (const auto& in : instances) {
    if (!in.tokens) continue;
    for (const auto& t : *in.tokens) out.push_back(t.label == data::TokenLabel::MRW ? 1 : 0);
  }
  return out;
}

std::set<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read word list " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.insert(line);
  }
  return out;
}

RandomBaselineSummary random_baseline_summary(std::span<const std::uint8_t> gold, double prior,
                                              const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  RandomBaselineSummary s;
  s.seeds = seeds;
  std::vector<double> f1s;
  for (const auto seed : seeds) {
    const auto preds = baseline_random(gold.size(), prior, seed);
    f1s.push_back(prf1(preds, gold).f1);
  }
  s.single_draw_f1 = f1s.front();
  double sum = 0.0;
  for (const auto f : f1s) sum += f;
  s.mean_f1 = sum / static_cast<double>(f1s.size());
  double ss = 0.0;
  for (const auto f : f1s) ss += (f - s.mean_f1) * (f - s.mean_f1);
  s.stdev_f1 = f1s.size() > 1 ? std::sqrt(ss / static_cast<double>(f1s.size() - 1)) : 0.0;
  s.min_f1 = *std::min_element(f1s.begin(), f1s.end());
  s.max_f1 = *std::max_element(f1s.begin(), f1s.end());
  return s;
}

}  // namespace figura::metrics
