#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "figura/audit/determinism.hpp"
#include "figura/audit/editability.hpp"
#include "figura/audit/worksheet.hpp"
#include "figura/data/dataset.hpp"
#include "figura/data/sample.hpp"
#include "figura/llm/errors.hpp"
#include "support.hpp"

using namespace figura;
using namespace figura::audit;

namespace {

engine::ProtocolConfig bundled(const std::string& name) {
  return engine::load_config(testing::config_file(name));
}

std::string worksheet(int correct, int partial, int incorrect) {
  std::string csv = std::string(kWorksheetHeader) + "\n";
  int id = 0;
  auto add = [&](int count, const char* verdict) {
    for (int i = 0; i < count; ++i)
      csv += "s" + std::to_string(id++) + ",D,LITERAL,r," + verdict + ",j1\n";
  };
  add(correct, "correct");
  add(partial, "partially_correct");
  add(incorrect, "incorrect");
  return csv;
}

std::vector<engine::RationaleRecord> records(std::size_t n) {
  std::vector<engine::RationaleRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    engine::RationaleRecord r;
    r.source_id = "s" + std::to_string(1000 + i);
    r.protocol_id = "D";
    r.config_version = "d-1";
    r.target = r.source_id;
    r.label = "LITERAL";
    r.triggering_step = "marker-detection";
    r.evidence = {{"summary", "no markers"}};
    r.confidence = "high";
    out.push_back(r);
  }
  return out;
}

std::size_t data_rows(const std::string& csv) {
  return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
}

}  // namespace

TEST_SUITE("audit") {
  TEST_CASE("replay determinism is total") {
    testing::TempDir dir;
    const auto cfg = bundled("protocol_c.json");
    auto cache = std::make_shared<llm::ResponseCache>(dir.path());
    const auto sentences =
        testing::prepare_all(data::load_any(testing::fixture("determinism_107.jsonl")));
    auto stub = testing::stub_gateway_for(cfg, cache);
    engine::run_dataset(cfg, sentences, *stub);
    auto replay = testing::replay_gateway_for(cfg, cache);
    const auto report = determinism_check(cfg, sentences, *replay);
    CHECK(report.instances_compared == 107);
    CHECK(report.fraction == 1.0);
    CHECK(report.mismatched.empty());
  }

  TEST_CASE("a cache mutated between runs is caught") {
    testing::TempDir dir;
    const auto cfg = bundled("protocol_b.json");
    auto cache = std::make_shared<llm::ResponseCache>(dir.path());
    const auto sentences = testing::prepare_all(data::load_any(testing::fixture("demo3.jsonl")));
    auto stub = testing::stub_gateway_for(cfg, cache);
    engine::run_dataset(cfg, sentences, *stub);

    // Swap the ground of the knife sentence for a different, still valid answer.
    std::string victim;
    for (const auto& d : cache->digests()) {
      const auto e = cache->find(d);
      if (e->request.template_id == llm::templates::kGround) victim = d.hex();
    }
    REQUIRE_FALSE(victim.empty());
    auto replay = testing::replay_gateway_for(cfg, cache);
    auto mutate = [&] {
      const auto path = dir / (victim + ".json");
      auto j = nlohmann::json::parse(testing::read_text(path));
      j["raw_text"] = "ground: 冰冷";
      j["response_sha256"] = llm::sha256("ground: 冰冷").hex();
      testing::write_text(path, j.dump());
      cache->reload();
    };
    const auto report = determinism_check(cfg, sentences, *replay, 1, mutate);
    CHECK(report.fraction < 1.0);
    CHECK(report.mismatched == std::vector<std::string>{"demo-1"});
  }

  TEST_CASE("determinism over nothing and over a missing cache") {
    const auto cfg = bundled("protocol_d.json");
    auto stub = testing::stub_gateway_for(cfg);
    const auto empty = determinism_check(cfg, {}, *stub);
    CHECK(empty.fraction == 1.0);
    CHECK(empty.instances_compared == 0);

    testing::TempDir dir;
    auto replay = testing::replay_gateway_for(cfg, std::make_shared<llm::ResponseCache>(dir.path()));
    CHECK_THROWS_AS(determinism_check(cfg, {testing::prepare("他的话像一把刀", "k")}, *replay),
                    llm::CacheMiss);
  }

  TEST_CASE("rationale sample worksheets") {
    const auto recs = records(200);
    const auto all = export_rationale_sample(records(12), 12, 3);
    CHECK(data_rows(all) == 12);
    CHECK(export_rationale_sample(recs, 50, 7) == export_rationale_sample(recs, 50, 7));
    CHECK(export_rationale_sample(recs, 50, 7) != export_rationale_sample(recs, 50, 8));

    const auto csv = export_rationale_sample(recs, 50, 7);
    CHECK(csv.rfind(std::string(kWorksheetHeader), 0) == 0);
    std::string expected_ids;
    for (auto i : data::sample_indices(200, 50, 7)) expected_ids += recs[i].source_id + ",";
    std::string got_ids;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) got_ids += line.substr(0, line.find(',')) + ",";
    CHECK(got_ids == expected_ids);
    CHECK_THROWS_AS(export_rationale_sample(recs, 201, 1), data::NTooLarge);
  }

  TEST_CASE("the exported worksheet parses once filled in") {
    auto csv = export_rationale_sample(records(3), 3, 1);
    std::string filled;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    filled += line + "\n";
    while (std::getline(lines, line)) filled += line.substr(0, line.size() - 1) + "correct,j9\n";
    const auto judgments = parse_worksheet(filled);
    CHECK(judgments.size() == 3);
    CHECK(score_rationales(judgments) == 1.0);
  }

  TEST_CASE("rationale scores") {
    CHECK(score_rationales(parse_worksheet(worksheet(5, 0, 0))) == 1.0);
    CHECK(score_rationales(parse_worksheet(worksheet(30, 10, 10))) == doctest::Approx(0.70));
    CHECK(score_rationales(parse_worksheet(worksheet(42, 3, 5))) == 0.87);
    CHECK(score_rationales(parse_worksheet(testing::read_text(testing::fixture("worksheet_42_3_5.csv")))) ==
          0.87);
    CHECK_THROWS_AS(score_rationales({}), EmptyJudgments);
    CHECK_THROWS_AS(parse_worksheet(std::string(kWorksheetHeader) + "\ns1,D,LITERAL,r,great,j1\n"),
                    WorksheetError);
    CHECK_THROWS_AS(parse_worksheet("wrong,header\n"), WorksheetError);
  }

  TEST_CASE("judges are averaged per decision") {
    const std::string csv = std::string(kWorksheetHeader) +
                            "\ns1,D,LITERAL,r,correct,j1\ns1,D,LITERAL,r,incorrect,j2\n"
                            "s2,D,LITERAL,r,correct,j1\n";
    CHECK(score_rationales(parse_worksheet(csv)) == doctest::Approx(0.75));
  }

  TEST_CASE("editability") {
    const auto cfg = bundled("protocol_d_core.json");
    const auto gold = data::load_any(testing::fixture("determinism_107.jsonl"));
    const auto sentences = testing::prepare_all(gold);
    auto factory = [](const engine::ProtocolConfig& c) { return testing::stub_gateway_for(c); };

    const auto patch = nlohmann::json::parse(
        testing::read_text(testing::config_file("patches/add_marker_wanru.json")));
    const auto trial = editability_trial(cfg, patch, {"named-05"}, sentences, gold, factory);
    CHECK(trial.targeted_changed);
    CHECK(trial.changed_targets == std::vector<std::string>{"named-05"});
    CHECK(trial.overall_f1_after - trial.overall_f1_before >= -0.01);
    CHECK(trial.success);
    CHECK(trial.patched_version == "d-core-2");

    const auto identity = editability_trial(cfg, nlohmann::json::object(), {"named-05"}, sentences,
                                            gold, factory);
    CHECK_FALSE(identity.targeted_changed);
    CHECK(identity.overall_f1_after == identity.overall_f1_before);

    CHECK_THROWS_AS(editability_trial(cfg, patch, {"nope"}, sentences, gold, factory),
                    std::invalid_argument);
  }
}
