#include "figura/metrics/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "figura/data/prng.hpp"
#include "figura/metrics/errors.hpp"

namespace figura::metrics {

std::vector<double> bootstrap_scores(const ResampleMetric& metric, std::size_t n,
                                     std::size_t iterations, std::uint64_t seed, unsigned threads) {
  if (iterations == 0) throw std::invalid_argument("bootstrap needs at least one iteration");
  if (n == 0) throw std::invalid_argument("bootstrap needs at least one instance");
  std::vector<double> scores(iterations);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    std::vector<std::size_t> idx(n);
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= iterations || failed) return;
      data::SplitMix64 rng(data::derive_seed(seed, b));
      for (auto& i : idx) i = static_cast<std::size_t>(rng.bounded(n));
      try {
        scores[b] = metric(idx);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(iterations)));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return scores;
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw EmptyInput("quantile of an empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BootstrapResult bootstrap(const ResampleMetric& metric, std::size_t n, std::size_t iterations,
                          std::uint64_t seed, unsigned threads) {
  auto scores = bootstrap_scores(metric, n, iterations, seed, threads);
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  BootstrapResult r;
  r.point_estimate = metric(identity);
  r.iterations = iterations;
  r.seed = seed;
  std::sort(scores.begin(), scores.end());
  r.ci_low = std::min(quantile(scores, 0.025), r.point_estimate);
  r.ci_high = std::max(quantile(scores, 0.975), r.point_estimate);
  return r;
}

BootstrapResult bootstrap_f1(std::span<const Pred> preds, std::span<const std::uint8_t> gold,
                             std::size_t iterations, std::uint64_t seed, unsigned threads) {
  if (preds.size() != gold.size()) throw LengthMismatch(preds.size(), gold.size());
  const auto metric = [&](std::span<const std::size_t> idx) {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0, ab = 0;
    for (const auto i : idx) {
      if (preds[i] == Pred::Abstain) ++ab;
      const bool p = preds[i] == Pred::Positive;
      if (p && gold[i]) ++tp;
      else if (p) ++fp;
      else if (gold[i]) ++fn;
      else ++tn;
    }
    return finish_report(tp, fp, fn, tn, ab).f1;
  };
  return bootstrap(metric, preds.size(), iterations, seed, threads);
}

}  // namespace figura::metrics
