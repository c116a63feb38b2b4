#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace figura::metrics {

// Cohen's kappa from exact integer contingency counts. When expected
// agreement is 1 (both raters constant on the same label) the result is 1.
// Throws LengthMismatch, or EmptyInput for empty sequences.
double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Landis-Koch band of a kappa value rounded to two decimals:
// < 0 poor, <= .20 slight, <= .40 fair, <= .60 moderate, <= .80 substantial,
// otherwise almost perfect.
std::string_view kappa_band(double kappa);
// Parses the decimal text first, e.g. kappa_band("0.986").
std::string_view kappa_band(std::string_view kappa_text);

struct KappaMatrix {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::string>> bands;
};

// Pairwise kappa over runs given in display order. Throws LengthMismatch.
KappaMatrix kappa_matrix(const std::vector<std::pair<std::string, std::vector<std::string>>>& runs);

}  // namespace figura::metrics
