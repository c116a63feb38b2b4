#include <set>

#include "doctest.h"
#include "figura/llm/backend.hpp"
#include "figura/llm/cache.hpp"
#include "figura/llm/errors.hpp"
#include "figura/llm/gateway.hpp"
#include "figura/llm/structured.hpp"
#include "figura/llm/templates.hpp"
#include "support.hpp"

using namespace figura;
using namespace figura::llm;

namespace {

TemplateRegistry echo_registry() {
  TemplateRegistry reg;
  reg.add_schema(Schema{"echo", {FieldSpec{"x", true, {}}}});
  reg.add_template(PromptTemplate{"echo", "echo {x}", "echo"});
  return reg;
}

Schema meaning_schema() {
  return Schema{"m", {FieldSpec{"contextual", true, {}}, FieldSpec{"basic", true, {}}}};
}

}  // namespace

TEST_SUITE("llm") {
  TEST_CASE("render_prompt substitutes slots") {
    const auto reg = echo_registry();
    CHECK(render_prompt(reg, "echo", {{"x", "甲"}}) == "echo 甲");
    CHECK_THROWS_AS(render_prompt(reg, "echo", {}), MissingSlot);
    CHECK_THROWS_AS(render_prompt(reg, "nope", {}), UnknownTemplate);
  }

  TEST_CASE("render_prompt handles escaped braces") {
    TemplateRegistry reg;
    reg.add_schema(Schema{"s", {}});
    reg.add_template(PromptTemplate{"t", "{{literal}} {a}", "s"});
    CHECK(render_prompt(reg, "t", {{"a", "1"}}) == "{literal} 1");
  }

  TEST_CASE("protocol A prompt carries the word and the sentence") {
    const auto reg = TemplateRegistry::builtin();
    const std::string sentence = "这个道理很深";
    const auto prompt = render_prompt(reg, templates::kContextualMeaning,
                                      {{"word", "深"}, {"sentence", sentence}});
    CHECK(prompt.find("深") != std::string::npos);
    CHECK(prompt.find(sentence) != std::string::npos);
  }

  TEST_CASE("template ids are immutable") {
    auto reg = echo_registry();
    CHECK_NOTHROW(reg.add_template(PromptTemplate{"echo", "echo {x}", "echo"}));
    CHECK_THROWS_AS(reg.add_template(PromptTemplate{"echo", "other {x}", "echo"}),
                    std::invalid_argument);
  }

  TEST_CASE("cache_key is a function of the request fields") {
    const auto reg = TemplateRegistry::builtin();
    const auto a = reg.make_request(templates::kBasicMeaning, {{"word", "深"}});
    const auto b = reg.make_request(templates::kBasicMeaning, {{"word", "深"}});
    CHECK(cache_key(a) == cache_key(b));

    // One slot value changed per request: every digest distinct.
    std::set<Digest> seen;
    const std::vector<std::string> words = {"深", "浅", "刀", "话", "梦", "海", "a", "b", "", " "};
    for (const auto& w : words) {
      seen.insert(cache_key(reg.make_request(templates::kBasicMeaning, {{"word", w}})));
      seen.insert(cache_key(reg.make_request(templates::kContextualMeaning,
                                             {{"word", w}, {"sentence", "句子"}})));
    }
    CHECK(seen.size() == 2 * words.size());

    auto c = a;
    c.max_tokens = 100;
    CHECK(cache_key(c) != cache_key(a));
    auto d = a;
    d.temperature = 0.5;
    CHECK(cache_key(d) != cache_key(a));
  }

  TEST_CASE("length prefixes keep slot boundaries unambiguous") {
    LLMRequest x{"t", {{"a", "bc"}}, 0.0, 10, "s"};
    LLMRequest y{"t", {{"ab", "c"}}, 0.0, 10, "s"};
    CHECK(cache_key(x) != cache_key(y));
  }

  TEST_CASE("cache metadata does not affect the digest") {
    testing::TempDir dir;
    ResponseCache cache(dir.path());
    const auto reg = TemplateRegistry::builtin();
    const auto req = reg.make_request(templates::kBasicMeaning, {{"word", "深"}});
    CHECK(cache.record(req, "basic: x"));
    const auto entry = cache.find(cache_key(req));
    REQUIRE(entry);
    auto j = entry_to_json(*entry);
    j["created_at"] = "1999-01-01T00:00:00Z";
    CHECK(entry_from_json(j).digest == cache_key(req));
  }

  TEST_CASE("replay returns the recorded text and misses on unknown digests") {
    testing::TempDir dir;
    auto cache = std::make_shared<ResponseCache>(dir.path());
    auto registry = std::make_shared<const TemplateRegistry>(TemplateRegistry::builtin());
    const auto req = registry->make_request(templates::kBasicMeaning, {{"word", "深"}});
    const std::string raw = "basic: 空间上的深度\n";
    cache->record(req, raw);

    Gateway gw(registry, std::make_shared<ReplayBackend>(cache), cache);
    const auto resp = gw.call(req);
    CHECK(resp.raw_text == raw);
    CHECK(resp.backend == BackendKind::Replay);

    const auto other = registry->make_request(templates::kBasicMeaning, {{"word", "浅"}});
    CHECK_THROWS_AS(gw.call(other), CacheMiss);
  }

  TEST_CASE("stub fixture gives the spatial basic meaning of 深") {
    auto gw = testing::stub_gateway();
    std::vector<Digest> consumed;
    const auto fields = gw->ask(templates::kBasicMeaning, {{"word", "深"}}, consumed);
    CHECK(fields.at("basic").find("空间") != std::string::npos);
    CHECK(consumed.size() == 1);
  }

  TEST_CASE("stub resolves by digest before rules, most specific rule first") {
    StubTable table;
    table.add("basic_meaning", {}, "basic: default");
    table.add("basic_meaning", {{"word", "刀"}}, "basic: knife");
    table.add("contextual_meaning", {}, "contextual: {word}", true);
    const auto reg = TemplateRegistry::builtin();
    const auto knife = reg.make_request(templates::kBasicMeaning, {{"word", "刀"}});
    const auto other = reg.make_request(templates::kBasicMeaning, {{"word", "石"}});
    CHECK(table.lookup(knife, cache_key(knife)) == "basic: knife");
    CHECK(table.lookup(other, cache_key(other)) == "basic: default");
    table.add(cache_key(other), "basic: pinned");
    CHECK(table.lookup(other, cache_key(other)) == "basic: pinned");
    const auto ctx =
        reg.make_request(templates::kContextualMeaning, {{"word", "海"}, {"sentence", "s"}});
    CHECK(table.lookup(ctx, cache_key(ctx)) == "contextual: 海");
    const auto miss = reg.make_request(templates::kTenor, {{"sentence", "s"}, {"vehicle", "v"}});
    CHECK_FALSE(table.lookup(miss, cache_key(miss)).has_value());

    auto round = StubTable::from_json(table.to_json());
    CHECK(round.size() == table.size());
  }

  TEST_CASE("stub gateway records into the cache") {
    testing::TempDir dir;
    auto cache = std::make_shared<ResponseCache>(dir.path());
    auto gw = testing::stub_gateway(cache);
    std::vector<Digest> consumed;
    gw->ask(templates::kBasicMeaning, {{"word", "深"}}, consumed);
    CHECK(cache->size() == 1);
    CHECK(cache->contains(consumed.at(0)));
  }

  TEST_CASE("parse_structured") {
    const auto fields = parse_structured("contextual: 深刻\nbasic: 空间深", meaning_schema());
    CHECK(fields.at("contextual") == "深刻");
    CHECK(fields.at("basic") == "空间深");
    CHECK(parse_structured("contextual：甲\n\nbasic: 乙\n", meaning_schema()).at("contextual") ==
          "甲");

    CHECK_THROWS_AS(parse_structured("", meaning_schema()), SchemaViolation);
    try {
      parse_structured("contextual: a\nbasic: b\nmood: c", meaning_schema());
      FAIL("expected SchemaViolation");
    } catch (const SchemaViolation& e) {
      CHECK(e.details().extra == std::vector<std::string>{"mood"});
    }
    Schema yn{"yn", {FieldSpec{"contrasts", true, {"yes", "no"}}}};
    CHECK_THROWS_AS(parse_structured("contrasts: maybe", yn), SchemaViolation);
    CHECK_THROWS_AS(parse_structured("no separator here", yn), SchemaViolation);
    CHECK_THROWS_AS(parse_structured("contrasts: yes\ncontrasts: no", yn), SchemaViolation);
  }

  TEST_CASE("render_structured round-trips") {
    FieldMap m{{"basic", "乙"}, {"contextual", "甲"}};
    CHECK(parse_structured(render_structured(m), meaning_schema()) == m);
  }

  TEST_CASE("validate_request rejects nonzero temperature and bad limits") {
    const auto reg = TemplateRegistry::builtin();
    auto req = reg.make_request(templates::kBasicMeaning, {{"word", "深"}});
    CHECK_NOTHROW(validate_request(reg, req));
    req.temperature = 0.7;
    CHECK_THROWS_AS(validate_request(reg, req), GatewayError);
    CHECK_NOTHROW(validate_request(reg, req, true));
    req.temperature = 0;
    req.max_tokens = 0;
    CHECK_THROWS_AS(validate_request(reg, req), GatewayError);
  }

  TEST_CASE("cache verify flags a tampered entry and the archive round-trips") {
    testing::TempDir dir;
    const auto reg = TemplateRegistry::builtin();
    {
      ResponseCache cache(dir / "a");
      cache.record(reg.make_request(templates::kBasicMeaning, {{"word", "深"}}), "basic: x");
      cache.record(reg.make_request(templates::kBasicMeaning, {{"word", "刀"}}), "basic: y");
      CHECK(cache.verify().empty());
      cache.export_archive(dir / "bundle.jsonl");
      ResponseCache other(dir / "b");
      CHECK(other.import_archive(dir / "bundle.jsonl") == 2);
      CHECK(other.digests() == cache.digests());
    }
    ResponseCache cache(dir / "a");
    const auto victim = dir / "a" / (cache.digests().front().hex() + ".json");
    auto body = testing::read_text(victim);
    const auto pos = body.find("basic: ");
    REQUIRE(pos != std::string::npos);
    body[pos] = 'B';
    testing::write_text(victim, body);
    cache.reload();
    CHECK(cache.verify().size() == 1);
    CHECK(cache.size() == 1);
  }

  TEST_CASE("recording an existing digest leaves the first response") {
    testing::TempDir dir;
    ResponseCache cache(dir.path());
    const auto req =
        TemplateRegistry::builtin().make_request(templates::kBasicMeaning, {{"word", "深"}});
    CHECK(cache.record(req, "basic: one"));
    CHECK_FALSE(cache.record(req, "basic: two"));
    CHECK(cache.find(cache_key(req))->raw_text == "basic: one");
  }

  TEST_CASE("digest hex round-trip") {
    const auto d = sha256("abc");
    CHECK(d.hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(Digest::from_hex(d.hex()) == d);
    CHECK_FALSE(Digest::from_hex("zz").has_value());
  }
}
