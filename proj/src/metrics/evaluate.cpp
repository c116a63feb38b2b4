#include "figura/metrics/evaluate.hpp"

#include <algorithm>
#include <set>

#include "figura/data/align.hpp"
#include "figura/data/dataset.hpp"
#include "figura/text/utf8.hpp"

namespace figura::metrics {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) out += (i ? ", " : "") + ids[i];
  if (ids.size() > 10) out += ", ...";
  return out;
}

Pred combine(Pred acc, Pred next) {
  if (acc == Pred::Positive || next == Pred::Positive) return Pred::Positive;
  if (acc == Pred::Abstain || next == Pred::Abstain) return Pred::Abstain;
  return Pred::Negative;
}

Pred outcome(const data::Prediction& p) {
  if (p.positive()) return Pred::Positive;
  if (p.abstained()) return Pred::Abstain;
  return Pred::Negative;
}

std::optional<Span> locate(const data::GoldSpan& s, const std::u32string& text) {
  if (s.start && s.end && *s.start < *s.end) return Span{*s.start, *s.end};
  if (s.text.empty()) return std::nullopt;
  const auto needle = text::to_u32(s.text);
  const auto pos = text.find(needle);
  if (pos == std::u32string::npos) return std::nullopt;
  return Span{pos, pos + needle.size()};
}

}  // namespace

AlignmentError::AlignmentError(std::vector<std::string> unmatched_predictions,
                               std::vector<std::string> unmatched_gold)
    : MetricError("alignment failed: " + std::to_string(unmatched_predictions.size()) +
                  " unmatched prediction ids [" + join_ids(unmatched_predictions) + "], " +
                  std::to_string(unmatched_gold.size()) + " unmatched gold ids [" +
                  join_ids(unmatched_gold) + "]"),
      preds_(std::move(unmatched_predictions)),
      gold_(std::move(unmatched_gold)) {}

std::map<std::string, Pred> sentence_outcomes(const std::vector<data::Prediction>& predictions) {
  std::map<std::string, Pred> out;
  for (const auto& p : predictions) {
    auto [it, inserted] = out.try_emplace(p.source_id, outcome(p));
    if (!inserted) it->second = combine(it->second, outcome(p));
  }
  return out;
}

EvalReport evaluate(const std::vector<data::Prediction>& predictions,
                    const std::vector<data::GoldInstance>& gold, const EvalOptions& options) {
  std::map<std::string, std::vector<const data::Prediction*>> by_id;
  for (const auto& p : predictions) by_id[p.source_id].push_back(&p);

  std::set<std::string> gold_ids;
  for (const auto& g : gold) gold_ids.insert(g.source_id);
  std::vector<std::string> stray;
  for (const auto& [id, _] : by_id) {
    if (!gold_ids.contains(id)) stray.push_back(id);
  }

  const bool gold_tokens = !gold.empty() && gold.front().label_type() == data::LabelType::Token;
  const bool pred_tokens = std::any_of(predictions.begin(), predictions.end(),
                                       [](const data::Prediction& p) { return p.token_level(); });
  const bool token_level = gold_tokens && pred_tokens;

  EvalReport report;
  report.level = token_level ? "token" : "sentence";
  report.span_match = options.span_match;

  std::vector<Pred> preds;
  std::vector<std::uint8_t> labels;
  std::vector<std::string> registers;
  std::vector<std::string> missing;

  if (token_level) {
    for (const auto& g : gold) {
      if (!g.tokens) throw MetricError("mixed label types in gold file (" + g.source_id + ")");
      std::vector<data::Interval> gold_iv;
      for (const auto& t : *g.tokens) gold_iv.emplace_back(t.char_start, t.char_end);
      std::vector<Pred> token_pred(g.tokens->size(), Pred::Negative);
      if (const auto it = by_id.find(g.source_id); it != by_id.end()) {
        std::vector<data::Interval> pred_iv;
        std::vector<Pred> pred_out;
        for (const auto* p : it->second) {
          if (!p->char_start || !p->char_end) {
            throw MetricError("token prediction without offsets for " + p->source_id);
          }
          pred_iv.emplace_back(*p->char_start, *p->char_end);
          pred_out.push_back(outcome(*p));
        }
        const auto aligned = data::align_by_overlap(pred_iv, gold_iv);
        for (std::size_t i = 0; i < aligned.size(); ++i) {
          if (aligned[i]) token_pred[*aligned[i]] = combine(token_pred[*aligned[i]], pred_out[i]);
        }
      }
      for (std::size_t t = 0; t < g.tokens->size(); ++t) {
        preds.push_back(token_pred[t]);
        labels.push_back((*g.tokens)[t].label == data::TokenLabel::MRW ? 1 : 0);
        registers.push_back(g.register_name.value_or(""));
      }
    }
  } else {
    const auto sentence_gold = gold_tokens ? data::to_sentence_level(gold) : gold;
    const auto outcomes = sentence_outcomes(predictions);
    for (const auto& g : sentence_gold) {
      const auto it = outcomes.find(g.source_id);
      if (it == outcomes.end()) {
        missing.push_back(g.source_id);
        continue;
      }
      if (!g.sentence_label) throw MetricError("gold instance without sentence label: " + g.source_id);
      preds.push_back(it->second);
      labels.push_back(*g.sentence_label == data::SentenceLabel::Metaphor ? 1 : 0);
      registers.push_back(g.register_name.value_or(""));
    }
  }
  if (!stray.empty() || !missing.empty()) throw AlignmentError(stray, missing);

  report.overall = prf1(preds, labels);
  if (options.iterations > 0 && !preds.empty()) {
    report.f1_interval = bootstrap_f1(preds, labels, options.iterations, options.seed, options.threads);
  }

  std::map<std::string, std::pair<std::vector<Pred>, std::vector<std::uint8_t>>> per_register;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (registers[i].empty()) continue;
    per_register[registers[i]].first.push_back(preds[i]);
    per_register[registers[i]].second.push_back(labels[i]);
  }
  for (const auto& [name, pl] : per_register) {
    report.by_register.emplace_back(name, prf1(pl.first, pl.second));
  }

  std::map<std::string, SpanCounts> role_counts;
  for (const auto& g : gold) {
    if (!g.spans) continue;
    const auto text = text::to_u32(g.text);
    std::map<std::string, std::pair<std::vector<Span>, std::vector<Span>>> per_role;
    for (const auto& s : *g.spans) {
      const auto role = std::string(data::to_string(s.role));
      auto& entry = per_role[role];
      if (const auto span = locate(s, text)) entry.second.push_back(*span);
    }
    if (const auto it = by_id.find(g.source_id); it != by_id.end()) {
      for (const auto* p : it->second) {
        for (const auto& s : p->spans) {
          const auto role = std::string(data::to_string(s.role));
          auto& entry = per_role[role];
          if (const auto span = locate(s, text)) {
            entry.first.push_back(*span);
          } else {
            // An unlocatable prediction still counts against precision.
            entry.first.push_back(Span{text.size() + 1, text.size() + 2});
          }
        }
      }
    }
    for (const auto& [role, pg] : per_role) {
      role_counts[role] += match_spans(pg.first, pg.second, options.span_match);
    }
  }
  for (const auto& [role, counts] : role_counts) {
    if (counts.n_gold == 0) continue;
    report.spans.push_back(SpanRoleScore{role, span_score(counts)});
  }
  return report;
}

KappaMatrix compare_runs(
    const std::vector<std::pair<std::string, std::vector<data::Prediction>>>& runs) {
  std::vector<std::map<std::string, Pred>> outcomes;
  for (const auto& r : runs) outcomes.push_back(sentence_outcomes(r.second));
  std::vector<std::pair<std::string, std::vector<std::string>>> labels;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<std::string> only_here, only_first;
    for (const auto& [id, _] : outcomes[i]) {
      if (!outcomes.front().contains(id)) only_here.push_back(id);
    }
    for (const auto& [id, _] : outcomes.front()) {
      if (!outcomes[i].contains(id)) only_first.push_back(id);
    }
    if (!only_here.empty() || !only_first.empty()) throw AlignmentError(only_here, only_first);
    std::vector<std::string> seq;
    for (const auto& [id, o] : outcomes[i]) seq.push_back(o == Pred::Positive ? "1" : "0");
    labels.emplace_back(runs[i].first, std::move(seq));
  }
  return kappa_matrix(labels);
}

}  // namespace figura::metrics
