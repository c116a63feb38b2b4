#include "figura/metrics/prf1.hpp"

#include "figura/metrics/errors.hpp"

namespace figura::metrics {

PRF1Report finish_report(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
                         std::size_t abstain_count) {
  PRF1Report r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.tn = tn;
  r.abstain_count = abstain_count;
  const auto d = [](std::size_t x) { return static_cast<double>(x); };
  r.precision = tp + fp == 0 ? 0.0 : d(tp) / d(tp + fp);
  r.recall = tp + fn == 0 ? 0.0 : d(tp) / d(tp + fn);
  r.f1 = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  r.accuracy = r.total() == 0 ? 0.0 : d(tp + tn) / d(r.total());
  return r;
}

PRF1Report prf1(std::span<const Pred> preds, std::span<const std::uint8_t> gold) {
  if (preds.size() != gold.size()) throw LengthMismatch(preds.size(), gold.size());
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0, abstain = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] == Pred::Abstain) ++abstain;
    const bool p = preds[i] == Pred::Positive;
    if (p && gold[i]) ++tp;
    else if (p) ++fp;
    else if (gold[i]) ++fn;
    else ++tn;
  }
  return finish_report(tp, fp, fn, tn, abstain);
}

PRF1Report prf1(const std::vector<std::string>& preds, const std::vector<std::string>& gold,
                std::string_view positive, std::string_view abstain) {
  if (preds.size() != gold.size()) throw LengthMismatch(preds.size(), gold.size());
  std::vector<Pred> p;
  p.reserve(preds.size());
  for (const auto& s : preds) {
    p.push_back(s == positive ? Pred::Positive : s == abstain ? Pred::Abstain : Pred::Negative);
  }
  std::vector<std::uint8_t> g;
  g.reserve(gold.size());
  for (const auto& s : gold) g.push_back(s == positive ? 1 : 0);
  return prf1(p, g);
}

}  // namespace figura::metrics
