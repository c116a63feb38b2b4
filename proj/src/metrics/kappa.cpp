#include "figura/metrics/kappa.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "figura/metrics/errors.hpp"

namespace figura::metrics {

double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  if (a.empty()) throw EmptyInput("cohen_kappa needs at least one item");
  std::map<std::string_view, std::pair<long long, long long>> marginals;
  long long agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    if (a[i] == b[i]) ++agree;
  }
  const auto n = static_cast<__int128>(a.size());
  __int128 chance = 0;  // n^2 * p_e
  for (const auto& [_, m] : marginals) chance += static_cast<__int128>(m.first) * m.second;
  const __int128 denom = n * n - chance;
  if (denom == 0) return 1.0;
  const __int128 numer = n * agree - chance;
  return static_cast<double>(numer) / static_cast<double>(denom);
}

std::string_view kappa_band(double kappa) {
  const double k = std::round(kappa * 100.0) / 100.0;
  if (k < 0.0) return "poor";
  if (k <= 0.20) return "slight";
  if (k <= 0.40) return "fair";
  if (k <= 0.60) return "moderate";
  if (k <= 0.80) return "substantial";
  return "almost perfect";
}

std::string_view kappa_band(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw MetricError("not a kappa value: '" + std::string(text) + "'");
  }
  return kappa_band(v);
}

KappaMatrix kappa_matrix(const std::vector<std::pair<std::string, std::vector<std::string>>>& runs) {
  KappaMatrix m;
  const auto k = runs.size();
  for (const auto& r : runs) {
    m.ids.push_back(r.first);
    if (r.second.size() != runs.front().second.size()) {
      throw LengthMismatch(runs.front().second.size(), r.second.size());
    }
  }
  m.values.assign(k, std::vector<double>(k, 1.0));
  m.bands.assign(k, std::vector<std::string>(k, std::string(kappa_band(1.0))));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = cohen_kappa(runs[i].second, runs[j].second);
      m.values[i][j] = m.values[j][i] = v;
      m.bands[i][j] = m.bands[j][i] = std::string(kappa_band(v));
    }
  }
  return m;
}

}  // namespace figura::metrics
