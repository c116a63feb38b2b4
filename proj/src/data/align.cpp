#include "figura/data/align.hpp"

#include <algorithm>

namespace figura::data {

std::vector<std::optional<std::size_t>> align_by_overlap(const std::vector<Interval>& predicted,
                                                         const std::vector<Interval>& gold) {
  std::vector<std::optional<std::size_t>> out;
  out.reserve(predicted.size());
  for (const auto& [ps, pe] : predicted) {
    std::optional<std::size_t> best;
    std::size_t best_overlap = 0;
    for (std::size_t g = 0; g < gold.size(); ++g) {
      const auto lo = std::max(ps, gold[g].first);
      const auto hi = std::min(pe, gold[g].second);
      const std::size_t overlap = hi > lo ? hi - lo : 0;
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = g;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace figura::data
