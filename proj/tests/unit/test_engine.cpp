#include "doctest.h"
#include "figura/data/dataset.hpp"
#include "figura/engine/config.hpp"
#include "figura/engine/pipeline.hpp"
#include "figura/engine/trace.hpp"
#include "support.hpp"

using namespace figura;
using namespace figura::engine;

namespace {

ProtocolConfig bundled(const std::string& name) { return load_config(testing::config_file(name)); }

std::vector<std::string> stage_names(const TraceRecord& t) {
  std::vector<std::string> out;
  for (const auto& s : t.stages) out.push_back(s.stage);
  return out;
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("D on a marker-free sentence makes no gateway call") {
    const auto cfg = bundled("protocol_d.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto run = run_protocol(cfg, testing::prepare("我们今天去公园。", "p"), *gw);
    REQUIRE(run.decisions.size() == 1);
    CHECK(run.decisions[0].label == Label::Literal);
    CHECK(run.decisions[0].granularity == Granularity::Sentence);
    CHECK(run.rationales[0].triggering_step == "marker-detection");
    CHECK(run.rationales[0].summary == "no markers");
    CHECK(run.rationales[0].llm_digests.empty());
    CHECK(run.trace.all_llm_digests().empty());
  }

  TEST_CASE("A on a sentence without content words") {
    const auto cfg = bundled("protocol_a.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto run = run_protocol(cfg, testing::prepare("。！", "p"), *gw);
    CHECK(run.decisions.empty());
    const auto names = stage_names(run.trace);
    CHECK(std::find(names.begin(), names.end(), "candidate-selection") != names.end());
  }

  TEST_CASE("trace stages follow the pipeline order") {
    const auto cfg = bundled("protocol_b.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto run = run_protocol(cfg, testing::prepare("他的话像一把刀", "k"), *gw);
    CHECK(stage_names(run.trace) ==
          std::vector<std::string>(kStages.begin(), kStages.end()));
    StageTracker tracker("x");
    tracker.record("classification", 1, 2);
    CHECK_THROWS_AS(tracker.record("candidate-selection", 1, 2), std::logic_error);
  }

  TEST_CASE("B on the knife sentence") {
    const auto cfg = bundled("protocol_b.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto run = run_protocol(cfg, testing::prepare("他的话像一把刀", "k"), *gw);
    REQUIRE(run.decisions.size() == 1);
    CHECK(run.decisions[0].label == Label::Metaphorical);
    const auto& ev = std::get<ConceptEvidence>(run.rationales[0].evidence);
    REQUIRE(ev.triple);
    CHECK(ev.triple->tenor.text == "话");
    CHECK(ev.triple->vehicle.text == "刀");
    CHECK(ev.triple->coherent == true);
    CHECK_FALSE(run.rationales[0].llm_digests.empty());
  }

  TEST_CASE("A emits token decisions with offsets") {
    const auto cfg = bundled("protocol_a.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto run = run_protocol(cfg, testing::prepare("他的话像一把刀", "k"), *gw);
    REQUIRE_FALSE(run.decisions.empty());
    bool knife = false;
    for (const auto& p : predictions({run})) {
      CHECK(p.token_level());
      if (p.char_start == 6u) knife = p.positive();
    }
    CHECK(knife);
  }

  TEST_CASE("gateway failures become abstentions") {
    const auto cfg = bundled("protocol_d.json");
    auto registry = make_registry(cfg);
    auto gw = std::make_shared<llm::Gateway>(registry,
                                             std::make_shared<llm::StubBackend>(llm::StubTable{}));
    const auto run = run_protocol(cfg, testing::prepare("他的话像一把刀", "k"), *gw);
    REQUIRE(run.decisions.size() == 1);
    CHECK(run.decisions[0].label == Label::Abstain);
    REQUIRE(run.rationales[0].failure);
    CHECK(run.rationales[0].failure->kind == "fixture_miss");
  }

  TEST_CASE("rationale files") {
    CHECK(serialize_rationales({}) == "[]\n");
    CHECK(parse_rationales("[]\n").empty());

    const auto cfg = bundled("protocol_d.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto gold = data::load_any(testing::fixture("demo3.jsonl"));
    const auto runs = run_dataset(cfg, testing::prepare_all(gold), *gw);
    const auto records = rationale_records(cfg, runs);
    CHECK(records.size() == 3);
    const auto bytes = serialize_rationales(records);
    CHECK(parse_rationales(bytes) == records);
    CHECK(serialize_rationales(parse_rationales(bytes)) == bytes);
    CHECK(records[0].config_version == "d-1");
    CHECK(records[0].label == "METAPHORICAL");
    CHECK(records[1].label == "LITERAL");
  }

  TEST_CASE("run_dataset is independent of thread count") {
    const auto cfg = bundled("protocol_a.json");
    auto gw = testing::stub_gateway_for(cfg);
    const auto sentences =
        testing::prepare_all(data::load_any(testing::fixture("determinism_107.jsonl")));
    const auto one = run_dataset(cfg, sentences, *gw, 1);
    const auto four = run_dataset(cfg, sentences, *gw, 4);
    CHECK(serialize_rationales(rationale_records(cfg, one)) ==
          serialize_rationales(rationale_records(cfg, four)));
    CHECK(serialize_traces(one) == serialize_traces(four));
    CHECK(std::is_sorted(one.begin(), one.end(),
                         [](const auto& a, const auto& b) { return a.source_id < b.source_id; }));
  }

  TEST_CASE("patches produce a new config and leave the original alone") {
    const auto base = bundled("protocol_d_core.json");
    const auto patch = nlohmann::json::parse(
        testing::read_text(testing::config_file("patches/add_marker_wanru.json")));
    const auto patched = apply_patch(base, patch);
    CHECK(patched.version == "d-core-2");
    CHECK(patched.params.markers.size() == base.params.markers.size() + 1);
    CHECK(base.version == "d-core-1");
    CHECK(std::find(base.params.markers.begin(), base.params.markers.end(), "宛如") ==
          base.params.markers.end());

    CHECK_THROWS_AS(apply_patch(base, nlohmann::json{{"protocol_id", "A"}}), PatchConflict);
    CHECK_THROWS_AS(apply_patch(base, nlohmann::json{{"base_version", "d-9"}, {"patch", {}}}),
                    PatchConflict);
    CHECK_THROWS_AS(apply_patch(base, nlohmann::json{{"stage_params", {{"markers", nlohmann::json::array()}}}}),
                    PatchConflict);
  }

  TEST_CASE("two configs run side by side without sharing state") {
    const auto full = bundled("protocol_d.json");
    const auto core = bundled("protocol_d_core.json");
    auto gw_full = testing::stub_gateway_for(full);
    auto gw_core = testing::stub_gateway_for(core);
    const auto s = testing::prepare("她的笑声宛如银铃", "w");
    CHECK(run_protocol(full, s, *gw_full).decisions[0].label == Label::Metaphorical);
    CHECK(run_protocol(core, s, *gw_core).decisions[0].label == Label::Literal);
    CHECK(run_protocol(full, s, *gw_full).decisions[0].label == Label::Metaphorical);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"protocol_id", "E"}, {"version", "x"}}),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"protocol_id", "A"},
                                                    {"version", "x"},
                                                    {"stage_params", {{"markers", {"像"}}}}}),
                    ConfigError);
    CHECK_THROWS_AS(
        config_from_json(nlohmann::json{
            {"protocol_id", "B"}, {"version", "x"}, {"stage_params", {{"domain_taxonomy", {"SPACESHIP"}}}}}),
        ConfigError);

    CHECK_THROWS_AS(config_from_json(nlohmann::json{
                        {"protocol_id", "D"},
                        {"version", "x"},
                        {"stage_params",
                         {{"markers", {"像"}}, {"templates", {{"comparison", "domain_label"}}}}}}),
                    ConfigError);

    CHECK_THROWS_AS(config_from_json(nlohmann::json{
                        {"protocol_id", "D"},
                        {"version", "x"},
                        {"stage_params", {{"markers", {"像"}}, {"templates", {{"comparison", "nope"}}}}}}),
                    ConfigError);
  }

  TEST_CASE("bundled configs are valid") {
    for (const char* name : {"protocol_a.json", "protocol_b.json", "protocol_c.json",
                             "protocol_d.json", "protocol_d_core.json"}) {
      const auto cfg = bundled(name);
      CHECK_NOTHROW(validate_config(cfg, *make_registry(cfg)));
    }
    CHECK(bundled("protocol_d.json").params.markers.size() == 15);
  }
}
