#include "figura/metrics/report.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "figura/text/utf8.hpp"

namespace figura::metrics {

using nlohmann::json;

TextTable::TextTable(std::vector<std::string> header, std::vector<bool> right_align)
    : header_(std::move(header)), right_(std::move(right_align)) {
  right_.resize(header_.size(), false);
}

void TextTable::add_row(std::vector<std::string> row) {
  row.resize(header_.size());
  rows_.push_back(std::move(row));
}

void TextTable::add_rule() { rows_.emplace_back(); }

std::string TextTable::render() const {
  std::vector<std::size_t> width(header_.size());
  for (std::size_t c = 0; c < header_.size(); ++c) width[c] = text::length(header_[c]);
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], text::length(row[c]));
  }
  std::size_t total = 0;
  for (const auto w : width) total += w;
  total += 2 * (width.size() - 1);
  const std::string rule(total, '-');

  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - text::length(row[c]), ' ');
      if (c) out += "  ";
      out += right_[c] ? pad + row[c] : row[c] + (c + 1 < row.size() ? pad : "");
    }
    return out + "\n";
  };
  std::string out = line(header_) + rule + "\n";
  for (const auto& row : rows_) out += row.empty() ? rule + "\n" : line(row);
  return out;
}

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

json to_json(const PRF1Report& r) {
  return json{{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1},
              {"accuracy", r.accuracy},   {"tp", r.tp},         {"fp", r.fp},
              {"fn", r.fn},               {"tn", r.tn},         {"abstain_count", r.abstain_count}};
}

json to_json(const BootstrapResult& r) {
  return json{{"point_estimate", r.point_estimate},
              {"ci_low", r.ci_low},
              {"ci_high", r.ci_high},
              {"iterations", r.iterations},
              {"seed", r.seed}};
}

json to_json(const EvalReport& r) {
  json j{{"level", r.level}, {"overall", to_json(r.overall)}};
  if (r.f1_interval) j["f1_interval"] = to_json(*r.f1_interval);
  json regs = json::object();
  for (const auto& [name, rep] : r.by_register) regs[name] = to_json(rep);
  if (!r.by_register.empty()) j["by_register"] = regs;
  if (!r.spans.empty()) {
    json spans = json::object();
    for (const auto& s : r.spans) {
      spans[s.role] = json{{"precision", s.score.precision},
                           {"recall", s.score.recall},
                           {"f1", s.score.f1},
                           {"n_pred", s.score.counts.n_pred},
                           {"n_gold", s.score.counts.n_gold}};
    }
    j["spans"] = spans;
    j["span_match"] = to_string(r.span_match);
  }
  return j;
}

json to_json(const KappaMatrix& m) {
  return json{{"ids", m.ids}, {"kappa", m.values}, {"bands", m.bands}};
}

json to_json(const data::DatasetStats& s) {
  return json{{"total", s.total},
              {"metaphor", s.metaphor},
              {"literal", s.literal},
              {"other", s.other},
              {"metaphor_pct", s.metaphor_pct}};
}

json to_json(const RandomBaselineSummary& s) {
  return json{{"single_draw_f1", s.single_draw_f1},
              {"mean_f1", s.mean_f1},
              {"stdev_f1", s.stdev_f1},
              {"min_f1", s.min_f1},
              {"max_f1", s.max_f1},
              {"seeds", s.seeds}};
}

std::string format_eval_table(const EvalReport& report, std::string_view name,
                              std::string_view evaluation) {
  TextTable t({"Protocol", "Evaluation", "P", "R", "F1", "Acc"},
              {false, false, true, true, true, true});
  const auto& o = report.overall;
  t.add_row({std::string(name), std::string(evaluation), fixed3(o.precision), fixed3(o.recall),
             fixed3(o.f1), fixed3(o.accuracy)});
  if (!report.by_register.empty()) {
    t.add_rule();
    for (const auto& [reg, r] : report.by_register) {
      t.add_row({std::string(name) + " by register", "  " + reg, fixed3(r.precision),
                 fixed3(r.recall), fixed3(r.f1), fixed3(r.accuracy)});
    }
  }
  if (!report.spans.empty()) {
    t.add_rule();
    for (const auto& s : report.spans) {
      t.add_row({std::string(name) + " span",
                 s.role + " partial F1 (" + std::string(to_string(report.span_match)) + ")", "---",
                 "---", fixed3(s.score.f1), "---"});
    }
  }
  std::string out = t.render();
  out += fmt::format("tp={} fp={} fn={} tn={} abstain={}\n", o.tp, o.fp, o.fn, o.tn, o.abstain_count);
  if (report.f1_interval) {
    const auto& b = *report.f1_interval;
    out += fmt::format("F1 95% CI [{}, {}] ({} bootstrap iterations, seed {})\n", fixed3(b.ci_low),
                       fixed3(b.ci_high), b.iterations, b.seed);
  }
  return out;
}

std::string format_kappa_table(const KappaMatrix& m) {
  std::vector<std::string> header{""};
  header.insert(header.end(), m.ids.begin(), m.ids.end());
  std::vector<bool> right(header.size(), true);
  right[0] = false;
  TextTable t(header, right);
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    std::vector<std::string> row{m.ids[i]};
    for (std::size_t j = 0; j < m.ids.size(); ++j) row.push_back(fixed3(m.values[i][j]));
    t.add_row(std::move(row));
  }
  std::string out = t.render();
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    for (std::size_t j = i + 1; j < m.ids.size(); ++j) {
      out += fmt::format("{}-{}: {} ({})\n", m.ids[i], m.ids[j], fixed3(m.values[i][j]), m.bands[i][j]);
    }
  }
  return out;
}

std::string format_stats_table(const std::vector<StatsRow>& rows) {
  TextTable t({"Dataset", "Total", "Metaphor", "Literal", "Other", "Metaphor%", "Label Type"},
              {false, true, true, true, true, true, false});
  for (const auto& r : rows) {
    t.add_row({r.dataset, fmt::format("{}", r.stats.total), fmt::format("{}", r.stats.metaphor),
               fmt::format("{}", r.stats.literal), fmt::format("{}", r.stats.other),
               fmt::format("{:.1f}%", r.stats.metaphor_pct * 100.0), r.label_type});
  }
  return t.render();
}

}  // namespace figura::metrics
