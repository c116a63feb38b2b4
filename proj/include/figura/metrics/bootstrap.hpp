#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "figura/metrics/prf1.hpp"

namespace figura::metrics {

inline constexpr std::size_t kDefaultBootstrapIterations = 10000;

struct BootstrapResult {
  double point_estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t iterations = kDefaultBootstrapIterations;
  std::uint64_t seed = 0;

  bool operator==(const BootstrapResult&) const = default;
};

// Scores a resample given as instance indices (with repetition).
using ResampleMetric = std::function<double(std::span<const std::size_t>)>;

// Percentile bootstrap. Iteration b draws n indices with
// SplitMix64(derive_seed(seed, b)).bounded(n); the 95% interval is the
// linearly interpolated 2.5th and 97.5th percentiles of the iteration scores,
// widened where needed so that it contains the point estimate. Iterations may
// run on `threads` workers without changing the result. Throws
// std::invalid_argument when iterations == 0 or n == 0.
BootstrapResult bootstrap(const ResampleMetric& metric, std::size_t n, std::size_t iterations,
                          std::uint64_t seed, unsigned threads = 1);

// The scores of every iteration, in iteration order.
std::vector<double> bootstrap_scores(const ResampleMetric& metric, std::size_t n,
                                     std::size_t iterations, std::uint64_t seed,
                                     unsigned threads = 1);

// Sample quantile with linear interpolation between order statistics
// (h = (m - 1) q). `sorted` must be non-empty and ascending.
double quantile(std::span<const double> sorted, double q);

// F1 of prf1 over resampled (pred, gold) pairs.
BootstrapResult bootstrap_f1(std::span<const Pred> preds, std::span<const std::uint8_t> gold,
                             std::size_t iterations = kDefaultBootstrapIterations,
                             std::uint64_t seed = 0, unsigned threads = 1);

}  // namespace figura::metrics
