#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "figura/data/dataset.hpp"
#include "figura/metrics/baselines.hpp"
#include "figura/metrics/bootstrap.hpp"
#include "figura/metrics/evaluate.hpp"
#include "figura/metrics/kappa.hpp"
#include "figura/metrics/prf1.hpp"
#include "json.hpp"

namespace figura::metrics {

// Plain-text table with columns padded to the widest cell (code points).
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header, std::vector<bool> right_align = {});
  void add_row(std::vector<std::string> row);
  void add_rule();
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<bool> right_;
  std::vector<std::vector<std::string>> rows_;  // empty row = rule
};

std::string fixed3(double v);

nlohmann::json to_json(const PRF1Report& r);
nlohmann::json to_json(const BootstrapResult& r);
nlohmann::json to_json(const EvalReport& r);
nlohmann::json to_json(const KappaMatrix& m);
nlohmann::json to_json(const data::DatasetStats& s);
nlohmann::json to_json(const RandomBaselineSummary& s);

// Protocol | Evaluation | P | R | F1 | Acc, with register and span rows.
std::string format_eval_table(const EvalReport& report, std::string_view name,
                              std::string_view evaluation);
// Square matrix of kappa values followed by each pair's band.
std::string format_kappa_table(const KappaMatrix& m);

struct StatsRow {
  std::string dataset;
  data::DatasetStats stats;
  std::string label_type;
};
// Dataset | Total | Metaphor | Literal | Other | Metaphor% | Label Type
std::string format_stats_table(const std::vector<StatsRow>& rows);

}  // namespace figura::metrics
