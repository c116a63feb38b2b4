// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criterion 12 runs only when FIGURA_CORPUS_DIR points at licensed
// corpus copies in unified form (<dir>/<NAME>.jsonl).

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "figura/audit/determinism.hpp"
#include "figura/audit/editability.hpp"
#include "figura/audit/worksheet.hpp"
#include "figura/data/dataset.hpp"
#include "figura/data/sample.hpp"
#include "figura/engine/pipeline.hpp"
#include "figura/metrics/baselines.hpp"
#include "figura/metrics/bootstrap.hpp"
#include "figura/metrics/kappa.hpp"
#include "figura/metrics/prf1.hpp"
#include "figura/metrics/span.hpp"
#include "figura/protocols/conceptual.hpp"
#include "figura/protocols/emotion.hpp"
#include "figura/protocols/mip.hpp"
#include "figura/protocols/simile.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace figura;
namespace t = figura::testing;

namespace {

struct Outcome {
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  std::string detail;
};

// Collects failed expectations; the first message wins the report line.
class Expect {
 public:
  void that(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  Outcome outcome(std::string detail) const {
    if (!failure_.empty()) return {Outcome::Status::Fail, failure_};
    return {Outcome::Status::Pass, std::move(detail)};
  }

 private:
  std::string failure_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

engine::ProtocolConfig bundled(const std::string& name) {
  return engine::load_config(t::config_file(name));
}

// 35,745 labels with the PSU CMC metaphor count at shuffled positions.
std::vector<std::uint8_t> synthetic_psu_gold() {
  std::vector<std::uint8_t> gold(35745, 0);
  std::fill(gold.begin(), gold.begin() + 3272, 1);
  std::mt19937_64 rng(20240501);
  std::shuffle(gold.begin(), gold.end(), rng);
  return gold;
}

Outcome determinism() {
  Expect expect;
  const auto start = Clock::now();
  const auto gold = data::load_any(t::fixture("determinism_107.jsonl"));
  const auto sentences = t::prepare_all(gold);
  std::string detail;
  for (const char* name : {"protocol_a.json", "protocol_b.json", "protocol_c.json", "protocol_d.json"}) {
    const auto cfg = bundled(name);
    auto gateway = t::stub_gateway_for(cfg);
    const auto r = audit::determinism_check(cfg, sentences, *gateway, 2);
    const auto id = std::string(engine::to_string(cfg.protocol_id));
    expect.that(r.instances_compared == sentences.size(), id + ": not every instance compared");
    expect.that(r.fraction == 1.0, fmt::format("{}: fraction {}", id, r.fraction));
    detail += fmt::format("{}={:.2f} ", id, r.fraction);
  }

  t::TempDir dir;
  const auto first = t::run_cli({"run", "--protocol", "A", "--dataset", "CMC", "--path",
                                 t::fixture("determinism_107.jsonl").string(), "--backend", "stub",
                                 "--stub-table", t::fixture("stub_table.json").string(),
                                 "--cache-dir", (dir / "cache").string(), "--out",
                                 (dir / "run").string()});
  expect.that(first.code == 0, "initial run failed: " + first.err);
  const auto manifest = (dir / "run" / "manifest.json").string();
  for (const char* out : {"r1", "r2"}) {
    const auto r = t::run_cli({"run", "--manifest", manifest, "--out", (dir / out).string()});
    expect.that(r.code == 0, std::string("manifest rerun failed: ") + r.err);
  }
  if (first.code == 0) {
    for (const char* f : {"rationales.json", "predictions.jsonl"}) {
      expect.that(t::read_text(dir / "r1" / f) == t::read_text(dir / "r2" / f),
                  std::string(f) + " differs between manifest reruns");
    }
  }
  const double elapsed = seconds_since(start);
  expect.that(elapsed < 10.0, fmt::format("took {:.1f}s", elapsed));
  return expect.outcome(detail + fmt::format("on {} sentences; manifest reruns identical; {:.1f}s",
                                             sentences.size(), elapsed));
}

Outcome majority_baseline() {
  Expect expect;
  const auto gold = synthetic_psu_gold();
  const auto report = metrics::prf1(metrics::baseline_majority(gold), gold);
  expect.that(report.f1 == 0.0, fmt::format("F1 {}", report.f1));
  return expect.outcome(fmt::format("F1 {:.3f} on {} labels", report.f1, gold.size()));
}

Outcome random_baseline() {
  Expect expect;
  const auto start = Clock::now();
  const auto gold = synthetic_psu_gold();
  std::vector<std::uint64_t> seeds(100);
  std::iota(seeds.begin(), seeds.end(), 1);
  const auto s = metrics::random_baseline_summary(gold, 0.092, seeds);
  const double elapsed = seconds_since(start);
  expect.that(s.mean_f1 >= 0.072 && s.mean_f1 <= 0.107, fmt::format("mean F1 {}", s.mean_f1));
  expect.that(elapsed < 30.0, fmt::format("took {:.1f}s", elapsed));
  return expect.outcome(fmt::format("mean F1 {:.4f} over {} seeds (sd {:.4f}); {:.2f}s", s.mean_f1,
                                    seeds.size(), s.stdev_f1, elapsed));
}

Outcome kappa_engine() {
  Expect expect;
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng() % 60;
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back("L" + std::to_string(rng() % k));
      b.push_back(rng() % 3 == 0 ? a.back() : "L" + std::to_string(rng() % k));
    }
    const double got = metrics::cohen_kappa(a, b);
    worst = std::max(worst, std::abs(got - oracle::kappa(a, b)));
    expect.that(got == metrics::cohen_kappa(b, a), fmt::format("asymmetric at fixture {}", round));
    expect.that(metrics::cohen_kappa(a, a) == 1.0, fmt::format("diagonal != 1 at fixture {}", round));
  }
  expect.that(worst <= 1e-12, fmt::format("max deviation {}", worst));
  expect.that(metrics::kappa_band("0.986") == "almost perfect", "band(0.986)");
  expect.that(metrics::kappa_band("0.001") == "slight", "band(0.001)");
  return expect.outcome(fmt::format("1000 fixtures, max |diff| {:.1e}; bands ok", worst));
}

Outcome truth_tables() {
  Expect expect;
  using engine::Label;
  int cases = 0;
  for (bool contrasts : {false, true}) {
    for (bool comprehensible : {false, true}) {
      protocols::MeaningPair p;
      p.contrasts = contrasts;
      p.comprehensible = comprehensible;
      expect.that(protocols::mip::classify(p) ==
                      (contrasts && comprehensible ? Label::Metaphorical : Label::Literal),
                  "A truth table");
      ++cases;
    }
  }
  protocols::ConceptTriple triple;
  expect.that(protocols::conceptual::classify(std::nullopt) == Label::Literal, "B absent");
  triple.coherent = true;
  expect.that(protocols::conceptual::classify(triple) == Label::Metaphorical, "B coherent");
  triple.coherent = false;
  expect.that(protocols::conceptual::classify(triple) == Label::Literal, "B incoherent");
  cases += 3;
  for (bool incongruent : {false, true}) {
    for (bool resolvable : {false, true}) {
      protocols::ValenceAssessment a;
      if (incongruent) {
        a.incongruent_span = protocols::CharSpan{0, 1, "x"};
        a.literal_valence = protocols::Valence::Neutral;
        a.figurative_valence = protocols::Valence::Negative;
      }
      a.resolvable = resolvable;
      expect.that(protocols::emotion::classify(a) ==
                      (incongruent && resolvable ? Label::Metaphorical : Label::Literal),
                  "C truth table");
      ++cases;
    }
  }
  for (bool cross : {false, true}) {
    protocols::ComparisonConstruct c;
    c.cross_domain = cross;
    expect.that(protocols::simile::classify(c) == (cross ? Label::Metaphorical : Label::Literal),
                "D truth table");
    ++cases;
  }

  auto sentence_label = [](const std::string& config, const std::string& text) {
    const auto cfg = bundled(config);
    auto gw = t::stub_gateway_for(cfg);
    const auto run = engine::run_protocol(cfg, t::prepare(text, "x"), *gw);
    bool positive = false;
    for (const auto& d : run.decisions) positive = positive || d.label == Label::Metaphorical;
    return positive ? Label::Metaphorical : Label::Literal;
  };
  expect.that(sentence_label("protocol_d.json", "她像她妈妈") == Label::Literal,
              "她像她妈妈 not LITERAL under D");
  for (const char* cfg : {"protocol_a.json", "protocol_b.json", "protocol_c.json", "protocol_d.json"}) {
    expect.that(sentence_label(cfg, "他的话像一把刀") == Label::Metaphorical,
                std::string("knife sentence not METAPHORICAL under ") + cfg);
  }
  return expect.outcome(fmt::format("{} flag combinations; mother LITERAL; knife METAPHORICAL (A-D)",
                                    cases));
}

Outcome marker_recall_bound() {
  Expect expect;
  const auto gold = data::load_any(t::fixture("markers_500.jsonl"));
  const auto cfg = bundled("protocol_d.json");
  auto gw = t::stub_gateway_for(cfg);
  const auto runs = engine::run_dataset(cfg, t::prepare_all(gold), *gw, 4);
  std::size_t with_markers = 0;
  std::size_t metaphorical = 0;
  for (const auto& g : gold)
    if (!protocols::simile::detect_markers(g.text, cfg.params.markers).empty()) ++with_markers;
  for (const auto& r : runs)
    for (const auto& d : r.decisions) metaphorical += d.label == engine::Label::Metaphorical;
  expect.that(gold.size() == 500, "fixture size");
  expect.that(with_markers == 10, fmt::format("{} sentences with markers", with_markers));
  expect.that(metaphorical <= 10, fmt::format("{} METAPHORICAL decisions", metaphorical));
  return expect.outcome(
      fmt::format("{} METAPHORICAL of {} sentences ({} with markers)", metaphorical, gold.size(),
                  with_markers));
}

Outcome bootstrap_oracle() {
  Expect expect;
  const std::vector<int> p = {1, 0, 1, 2};
  const std::vector<int> g = {1, 1, 0, 0};
  const std::vector<metrics::Pred> preds = {metrics::Pred::Positive, metrics::Pred::Negative,
                                            metrics::Pred::Positive, metrics::Pred::Abstain};
  const std::vector<std::uint8_t> gold = {1, 1, 0, 0};
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xDEADBEEFULL}) {
    const auto want = oracle::bootstrap_f1(p, g, 10, seed);
    const auto got = metrics::bootstrap_f1(preds, gold, 10, seed);
    expect.that(got.point_estimate == want.point && got.ci_low == want.low &&
                    got.ci_high == want.high,
                fmt::format("seed {}: [{}, {}] vs oracle [{}, {}]", seed, got.ci_low, got.ci_high,
                            want.low, want.high));
  }
  const auto defaulted = metrics::bootstrap_f1(preds, gold);
  expect.that(defaulted.iterations == 10000, "default iterations");
  expect.that(metrics::kDefaultBootstrapIterations == 10000, "default constant");
  return expect.outcome("4 seeds bit-exact at 10 iterations; default 10000");
}

Outcome span_metric() {
  Expect expect;
  std::mt19937_64 rng(200);
  auto random_spans = [&](std::size_t n, std::size_t width) {
    std::vector<metrics::Span> out;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = rng() % 30;
      out.push_back({a, a + 1 + rng() % width});
    }
    return out;
  };
  auto pairs = [](const std::vector<metrics::Span>& s) {
    std::vector<std::pair<int, int>> out;
    for (const auto& x : s) out.emplace_back(static_cast<int>(x.start), static_cast<int>(x.end));
    return out;
  };
  for (int round = 0; round < 200; ++round) {
    const auto pred = random_spans(rng() % 6, 6);
    const auto gold = random_spans(rng() % 6, 6);
    const double got = metrics::span_partial_f1(pred, gold);
    const double want = oracle::greedy_overlap_f1(pairs(pred), pairs(gold));
    expect.that(std::abs(got - want) < 1e-12,
                fmt::format("random set {}: {} vs oracle {}", round, got, want));

    const auto same = random_spans(1 + rng() % 5, 4);
    expect.that(metrics::span_partial_f1(same, same) ==
                    oracle::exact_match_f1(pairs(same), pairs(same)),
                fmt::format("identical set {} differs from exact match", round));

    std::vector<metrics::Span> left, right;
    for (std::size_t i = 0; i < 1 + rng() % 4; ++i) {
      left.push_back({i * 20, i * 20 + 5});
      right.push_back({i * 20 + 10, i * 20 + 15});
    }
    expect.that(metrics::span_partial_f1(left, right) == 0.0,
                fmt::format("disjoint set {} scored above 0", round));
  }
  return expect.outcome("200 random sets match greedy oracle; identical = exact; disjoint = 0");
}

Outcome sentence_conversion() {
  Expect expect;
  std::mt19937_64 rng(9);
  const data::TokenLabel kinds[] = {data::TokenLabel::MRW, data::TokenLabel::Literal,
                                    data::TokenLabel::MFlag};
  std::size_t positives = 0;
  for (int round = 0; round < 1000; ++round) {
    data::GoldInstance g;
    g.source_id = "r" + std::to_string(round);
    std::vector<data::GoldToken> tokens;
    std::vector<std::string> names;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      // Skew towards literal so both outcomes are common.
      const auto label = kinds[rng() % 10 == 0 ? 0 : 1 + rng() % 2];
      tokens.push_back({"字", label, i, i + 1});
      names.emplace_back(data::to_string(label));
      g.text += "字";
    }
    g.tokens = tokens;
    const bool want = oracle::any_mrw(names);
    positives += want;
    const auto got = data::to_sentence_level({g}).at(0).sentence_label;
    expect.that((got == data::SentenceLabel::Metaphor) == want,
                fmt::format("fixture {} disagrees", round));
  }
  return expect.outcome(fmt::format("1000 fixtures ({} metaphor) match any-MRW", positives));
}

Outcome rationale_score() {
  Expect expect;
  const auto judgments =
      audit::parse_worksheet(t::read_text(t::fixture("worksheet_42_3_5.csv")));
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& j : judgments) ++counts[static_cast<int>(j.verdict)];
  const double score = audit::score_rationales(judgments);
  expect.that(judgments.size() == 50, "fixture has " + std::to_string(judgments.size()) + " rows");
  expect.that(counts[0] == 42 && counts[1] == 3 && counts[2] == 5, "verdict counts");
  expect.that(score == 0.87, fmt::format("score {}", score));
  return expect.outcome(fmt::format("score {} ({}/{}/{})", score, counts[0], counts[1], counts[2]));
}

Outcome editability() {
  Expect expect;
  const auto cfg = bundled("protocol_d_core.json");
  const auto gold = data::load_any(t::fixture("determinism_107.jsonl"));
  const auto sentences = t::prepare_all(gold);
  auto factory = [](const engine::ProtocolConfig& c) { return t::stub_gateway_for(c); };
  const auto patch = nlohmann::json::parse(t::read_text(t::config_file("patches/add_marker_wanru.json")));
  const auto identity = nlohmann::json::parse(t::read_text(t::config_file("patches/identity.json")));

  const auto trial = audit::editability_trial(cfg, patch, {"named-05"}, sentences, gold, factory);
  const double delta = trial.overall_f1_after - trial.overall_f1_before;
  expect.that(trial.targeted_changed, "targeted instance did not change");
  expect.that(delta >= -0.01, fmt::format("F1 delta {}", delta));

  const auto target = std::find_if(sentences.begin(), sentences.end(),
                                   [](const auto& s) { return s.source_id == "named-05"; });
  const auto patched = engine::apply_patch(cfg, patch);
  auto label_under = [&](const engine::ProtocolConfig& c) {
    auto gw = factory(c);
    return engine::run_protocol(c, *target, *gw).decisions.at(0).label;
  };
  expect.that(label_under(cfg) == engine::Label::Literal, "named-05 not LITERAL before the patch");
  expect.that(label_under(patched) == engine::Label::Metaphorical,
              "named-05 not METAPHORICAL after the patch");

  const auto none = audit::editability_trial(cfg, identity, {"named-05"}, sentences, gold, factory);
  expect.that(!none.targeted_changed && none.changed_targets.empty(), "identity patch changed a target");
  expect.that(none.overall_f1_after == none.overall_f1_before, "identity patch moved F1");
  return expect.outcome(fmt::format("named-05 LITERAL->METAPHORICAL, F1 {:.3f}->{:.3f}; identity unchanged",
                                    trial.overall_f1_before, trial.overall_f1_after));
}

Outcome corpus_statistics() {
  const char* dir = std::getenv("FIGURA_CORPUS_DIR");
  if (dir == nullptr || *dir == '\0') {
    return {Outcome::Status::Skip,
            "licensed corpora not available; set FIGURA_CORPUS_DIR to a directory of "
            "<NAME>.jsonl unified files to run"};
  }
  Expect expect;
  std::size_t checked = 0;
  for (const auto name : data::kAllDatasets) {
    const auto path = std::filesystem::path(dir) / (std::string(data::to_string(name)) + ".jsonl");
    if (!std::filesystem::exists(path)) {
      expect.that(false, "missing " + path.string());
      continue;
    }
    const auto s = data::stats(data::load({name, path}));
    expect.that(data::matches_reference(s, data::reference_row(name)),
                fmt::format("{}: {} / {} / {:.1f}%", data::to_string(name), s.total, s.metaphor,
                            100.0 * s.metaphor_pct));
    ++checked;
  }
  return expect.outcome(fmt::format("{} corpora match the reference rows", checked));
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "determinism", determinism},
      {2, "majority baseline", majority_baseline},
      {3, "random baseline", random_baseline},
      {4, "kappa engine", kappa_engine},
      {5, "protocol truth tables", truth_tables},
      {6, "protocol D recall bound", marker_recall_bound},
      {7, "bootstrap oracle", bootstrap_oracle},
      {8, "span metric", span_metric},
      {9, "sentence conversion", sentence_conversion},
      {10, "rationale scoring", rationale_score},
      {11, "editability harness", editability},
      {12, "corpus statistics", corpus_statistics},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {Outcome::Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Outcome::Status::Pass   ? "PASS"
                      : o.status == Outcome::Status::Skip ? "SKIP"
                                                          : "FAIL";
    failures += o.status == Outcome::Status::Fail;
    std::cout << fmt::format("{} {:>2} {}: {}\n", tag, c.id, c.name, o.detail);
  }
  std::cout << (failures == 0 ? "all criteria met\n" : fmt::format("{} criteria failed\n", failures));
  return failures == 0 ? 0 : 1;
}
