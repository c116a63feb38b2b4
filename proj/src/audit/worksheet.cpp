#include "figura/audit/worksheet.hpp"

#include <tuple>

#include "figura/data/csv.hpp"
#include "figura/data/sample.hpp"

namespace figura::audit {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Correct:
      return "correct";
    case Verdict::PartiallyCorrect:
      return "partially_correct";
    case Verdict::Incorrect:
      return "incorrect";
  }
  return "incorrect";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  if (s == "correct") return Verdict::Correct;
  if (s == "partially_correct") return Verdict::PartiallyCorrect;
  if (s == "incorrect") return Verdict::Incorrect;
  return std::nullopt;
}

std::string decision_cell(const engine::RationaleRecord& record) {
  if (record.target.is_number_integer()) {
    return record.label + "@" + std::to_string(record.target.get<long long>());
  }
  return record.label;
}

std::string export_rationale_sample(const std::vector<engine::RationaleRecord>& records,
                                    std::size_t n, std::uint64_t seed,
                                    const std::map<std::string, std::string>& texts) {
  std::string out(kWorksheetHeader);
  out += '\n';
  for (const auto i : data::sample_indices(records.size(), n, seed)) {
    const auto& r = records[i];
    std::string rationale;
    if (const auto it = texts.find(r.source_id); it != texts.end()) {
      rationale += "text: " + it->second + " | ";
    }
    rationale += "step: " + r.triggering_step + " | confidence: " + r.confidence +
                 " | summary: " + r.evidence.value("summary", std::string());
    out += data::csv_row({r.source_id, r.protocol_id, decision_cell(r), rationale, "", ""});
    out += '\n';
  }
  return out;
}

std::vector<RationaleJudgment> parse_worksheet(std::string_view csv) {
  std::vector<std::vector<std::string>> rows;
  try {
    rows = data::parse_csv(csv);
  } catch (const std::invalid_argument& ex) {
    throw WorksheetError(ex.what());
  }
  if (rows.empty() || data::csv_row(rows.front()) != kWorksheetHeader) {
    throw WorksheetError("worksheet header must be: " + std::string(kWorksheetHeader));
  }
  std::vector<RationaleJudgment> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 6) {
      throw WorksheetError("row " + std::to_string(r + 1) + ": expected 6 fields");
    }
    const auto verdict = parse_verdict(row[4]);
    if (!verdict) {
      throw WorksheetError("row " + std::to_string(r + 1) + ": verdict '" + row[4] +
                           "' is not correct, partially_correct or incorrect");
    }
    out.push_back(RationaleJudgment{row[0], row[1], row[2], *verdict, row[5]});
  }
  return out;
}

double score_rationales(const std::vector<RationaleJudgment>& judgments) {
  if (judgments.empty()) throw EmptyJudgments();
  // Per row: summed weight in half points and judge count.
  std::map<std::tuple<std::string, std::string, std::string>, std::pair<long long, long long>> rows;
  for (const auto& j : judgments) {
    auto& [half_points, judges] = rows[{j.source_id, j.protocol, j.decision}];
    half_points += j.verdict == Verdict::Correct ? 2 : j.verdict == Verdict::PartiallyCorrect ? 1 : 0;
    ++judges;
  }
  double total = 0.0;
  for (const auto& [_, v] : rows) {
    total += static_cast<double>(v.first) / (2.0 * static_cast<double>(v.second));
  }
  return total / static_cast<double>(rows.size());
}

}  // namespace figura::audit
