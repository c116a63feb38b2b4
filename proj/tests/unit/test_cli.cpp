#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "figura/data/dataset.hpp"
#include "figura/cli/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace figura;
using testing::run_cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fx(const std::string& name) { return testing::fixture(name).string(); }

std::vector<std::string> run_args(const std::string& protocol, const std::string& dataset_file,
                                  const testing::TempDir& dir, const std::string& out = "run") {
  return {"run",         "--protocol", protocol,         "--dataset",
          "CMC",         "--path",     fx(dataset_file), "--backend",
          "stub",        "--stub-table", fx("stub_table.json"), "--cache-dir",
          (dir / "cache").string(),    "--out", (dir / out).string()};
}

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("run writes one prediction and rationale per sentence") {
    testing::TempDir dir;
    const auto r = run_cli(run_args("D", "demo3.jsonl", dir));
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(lines(testing::read_text(dir / "run/predictions.jsonl")) == 3);
    CHECK(json::parse(testing::read_text(dir / "run/rationales.json")).size() == 3);
    CHECK(fs::exists(dir / "run/traces.jsonl"));
    const auto manifest = json::parse(testing::read_text(dir / "run/manifest.json"));
    CHECK(manifest["config"]["protocol_id"] == "D");
    CHECK(manifest["backend"] == "stub");
    CHECK(json::parse(r.out)["decisions"] == 3);
  }

  TEST_CASE("a manifest rerun replays byte-identical outputs") {
    testing::TempDir dir;
    REQUIRE(run_cli(run_args("B", "demo3.jsonl", dir)).code == 0);
    const auto manifest = (dir / "run/manifest.json").string();
    const auto again = run_cli({"run", "--manifest", manifest, "--out", (dir / "again").string()});
    REQUIRE_MESSAGE(again.code == 0, again.err);
    for (const char* f : {"predictions.jsonl", "rationales.json", "traces.jsonl"}) {
      CHECK(testing::read_text(dir / "run" / f) == testing::read_text(dir / "again" / f));
    }
    CHECK(json::parse(testing::read_text(dir / "again/manifest.json"))["backend"] == "replay");
  }

  TEST_CASE("a changed input breaks the manifest") {
    testing::TempDir dir;
    const auto data = dir / "data.jsonl";
    testing::write_text(data, testing::read_text(testing::fixture("demo3.jsonl")));
    auto args = run_args("D", "demo3.jsonl", dir);
    args[6] = data.string();
    REQUIRE(run_cli(args).code == 0);
    testing::write_text(data, testing::read_text(testing::fixture("eval_gold4.jsonl")));
    const auto r = run_cli(
        {"run", "--manifest", (dir / "run/manifest.json").string(), "--out", (dir / "x").string()});
    CHECK(r.code == cli::kExitIo);
    CHECK(json::parse(r.err)["error"] == "ManifestMismatch");
  }

  TEST_CASE("a missing dataset exits 2 with an error object") {
    testing::TempDir dir;
    auto args = run_args("D", "demo3.jsonl", dir);
    args[6] = (dir / "absent.jsonl").string();
    const auto r = run_cli(args);
    CHECK(r.code == cli::kExitIo);
    const auto err = json::parse(r.err);
    CHECK(err["exit_code"] == 2);
    CHECK(err.contains("message"));
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == cli::kExitIo);
    CHECK(run_cli({"run", "--bogus"}).code == cli::kExitIo);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);
  }

  TEST_CASE("eval") {
    const auto perfect = run_cli({"eval", "--predictions", fx("eval_pred_perfect.jsonl"), "--dataset",
                                  "CMC", "--path", fx("eval_gold4.jsonl"), "--iterations", "50",
                                  "--format", "json"});
    REQUIRE_MESSAGE(perfect.code == 0, perfect.err);
    CHECK(json::parse(perfect.out)["overall"]["f1"] == 1.0);

    const auto confusion = run_cli({"eval", "--predictions", fx("eval_pred_confusion.jsonl"),
                                    "--dataset", "CMC", "--path", fx("eval_gold4.jsonl"),
                                    "--iterations", "0", "--format", "json"});
    REQUIRE(confusion.code == 0);
    const auto j = json::parse(confusion.out);
    CHECK(j["overall"]["precision"] == 0.5);
    CHECK(j["overall"]["recall"] == 0.5);
    CHECK(j["overall"]["f1"] == 0.5);
    CHECK(j["by_register"].size() == 2);

    const auto table = run_cli({"eval", "--predictions", fx("eval_pred_confusion.jsonl"),
                                "--dataset", "CMC", "--path", fx("eval_gold4.jsonl"),
                                "--iterations", "0", "--name", "D"});
    CHECK(table.out.find("fiction") != std::string::npos);
    CHECK(table.out.find("0.500") != std::string::npos);
  }

  TEST_CASE("eval against a mismatching gold exits 1") {
    testing::TempDir dir;
    testing::write_text(dir / "p.jsonl",
                        R"({"label":"METAPHORICAL","source_id":"zz","target":"zz"})" "\n");
    const auto r = run_cli({"eval", "--predictions", (dir / "p.jsonl").string(), "--dataset", "CMC",
                            "--path", fx("eval_gold4.jsonl")});
    CHECK(r.code == cli::kExitMetric);
    CHECK(json::parse(r.err)["error"] == "AlignmentError");
  }

  TEST_CASE("compare") {
    const auto same = run_cli({"compare", "a=" + fx("eval_pred_confusion.jsonl"),
                               "b=" + fx("eval_pred_confusion.jsonl"), "--format", "json"});
    REQUIRE_MESSAGE(same.code == 0, same.err);
    CHECK(json::parse(same.out)["kappa"][0][1] == 1.0);

    const auto opposite = run_cli({"compare", "a=" + fx("eval_pred_perfect.jsonl"),
                                   "b=" + fx("eval_pred_complement.jsonl"), "--format", "json"});
    REQUIRE(opposite.code == 0);
    CHECK(json::parse(opposite.out)["kappa"][0][1] == -1.0);

    const auto four = run_cli({"compare", "A=" + fx("eval_pred_perfect.jsonl"),
                               "B=" + fx("eval_pred_complement.jsonl"),
                               "C=" + fx("eval_pred_confusion.jsonl"),
                               "D=" + fx("eval_pred_perfect.jsonl"), "--format", "json"});
    REQUIRE(four.code == 0);
    const auto m = json::parse(four.out)["kappa"];
    REQUIRE(m.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(m[i][i] == 1.0);
      for (std::size_t k = 0; k < 4; ++k) CHECK(m[i][k] == m[k][i]);
    }
    CHECK(run_cli({"compare", fx("eval_pred_perfect.jsonl")}).code == cli::kExitIo);
  }

  TEST_CASE("cache verify, corruption and archive round-trip") {
    testing::TempDir dir;
    REQUIRE(run_cli(run_args("D", "demo3.jsonl", dir)).code == 0);
    const auto cache = (dir / "cache").string();

    const auto ok = run_cli({"cache", "verify", "--cache-dir", cache});
    REQUIRE(ok.code == 0);
    CHECK(json::parse(ok.out)["mismatches"].empty());

    const auto archive = (dir / "bundle.jsonl").string();
    REQUIRE(run_cli({"cache", "export", "--cache-dir", cache, "--archive", archive}).code == 0);
    const auto fresh = (dir / "fresh").string();
    REQUIRE(run_cli({"cache", "import", "--cache-dir", fresh, "--archive", archive}).code == 0);
    auto digests = [](const std::string& listing) {
      std::vector<std::string> out;
      std::istringstream in(listing);
      std::string line;
      while (std::getline(in, line)) out.push_back(line.substr(0, line.find('\t')));
      return out;
    };
    const auto list_a = digests(run_cli({"cache", "list", "--cache-dir", cache}).out);
    CHECK(list_a.size() == 6);
    CHECK(list_a == digests(run_cli({"cache", "list", "--cache-dir", fresh}).out));

    for (const auto& e : fs::directory_iterator(dir / "cache")) {
      if (e.path().extension() != ".json") continue;
      auto body = testing::read_text(e.path());
      const auto key = body.find("\"raw_text\"");
      REQUIRE(key != std::string::npos);
      const auto pos = body.find('"', body.find(':', key)) + 1;
      body[pos] = body[pos] == 'x' ? 'y' : 'x';
      testing::write_text(e.path(), body);
      break;
    }
    const auto bad = run_cli({"cache", "verify", "--cache-dir", cache});
    CHECK(bad.code == cli::kExitCache);
    CHECK(json::parse(bad.err)["error"] == "CorruptEntry");
  }

  TEST_CASE("audit subcommands") {
    testing::TempDir dir;
    auto args = run_args("D", "determinism_107.jsonl", dir);
    REQUIRE(run_cli(args).code == 0);

    const auto det = run_cli({"audit", "determinism", "--protocol", "D", "--dataset", "CMC", "--path",
                              fx("determinism_107.jsonl"), "--backend", "replay", "--cache-dir",
                              (dir / "cache").string()});
    REQUIRE_MESSAGE(det.code == 0, det.err);
    CHECK(json::parse(det.out)["fraction"] == 1.0);
    CHECK(det.err.find("107/107 identical (1.00)") != std::string::npos);

    const auto rationales = (dir / "run/rationales.json").string();
    const auto s1 = run_cli({"audit", "sample", "--rationales", rationales, "--n", "50", "--seed", "7"});
    const auto s2 = run_cli({"audit", "sample", "--rationales", rationales, "--n", "50", "--seed", "7"});
    REQUIRE(s1.code == 0);
    CHECK(s1.out == s2.out);
    CHECK(lines(s1.out) == 51);
    CHECK(run_cli({"audit", "sample", "--rationales", rationales, "--n", "500"}).code == cli::kExitIo);

    const auto score = run_cli({"audit", "score", "--worksheet", fx("worksheet_42_3_5.csv")});
    REQUIRE(score.code == 0);
    CHECK(json::parse(score.out)["score"] == 0.87);

    const auto edit = run_cli({"audit", "edit", "--config", testing::config_file("protocol_d_core.json").string(),
                               "--dataset", "CMC", "--path", fx("determinism_107.jsonl"), "--backend",
                               "stub", "--stub-table", fx("stub_table.json"), "--patch",
                               testing::config_file("patches/identity.json").string(), "--target",
                               "named-05"});
    REQUIRE_MESSAGE(edit.code == 0, edit.err);
    const auto trial = json::parse(edit.out);
    CHECK(trial["targeted_changed"] == false);
    CHECK(trial["changed_targets"].empty());
  }

  TEST_CASE("stats and import") {
    testing::TempDir dir;
    const auto r = run_cli({"stats", "--dataset", "PSU_CMC", "--path", fx("psu_cmc_20.tsv"), "--native",
                            "--format", "json"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto j = json::parse(r.out);
    CHECK(j.dump().find("116") != std::string::npos);

    const auto check = run_cli({"stats", "--dataset", "PSU_CMC", "--path", fx("psu_cmc_20.jsonl"),
                                "--check-reference"});
    CHECK(check.code == cli::kExitMetric);

    const auto out = (dir / "psu.jsonl").string();
    REQUIRE(run_cli({"import", "--dataset", "PSU_CMC", "--path", fx("psu_cmc_20.tsv"), "--out", out})
                .code == 0);
    CHECK(data::load_any(out) == data::load_any(testing::fixture("psu_cmc_20.jsonl")));
  }

  TEST_CASE("baselines") {
    const auto r = run_cli({"baselines", "--dataset", "PSU_CMC", "--path", fx("psu_cmc_20.jsonl"),
                            "--seeds", "5", "--format", "json"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("majority") != std::string::npos);
  }
}
