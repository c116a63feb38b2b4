#include "figura/engine/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "figura/llm/errors.hpp"
#include "figura/protocols/conceptual.hpp"
#include "figura/protocols/emotion.hpp"
#include "figura/protocols/mip.hpp"
#include "figura/protocols/simile.hpp"

namespace figura::engine {

using nlohmann::json;
using namespace figura::protocols;

namespace {

json sentence_json(const text::Sentence& s) {
  json tokens = json::array();
  for (const auto& t : s.tokens) {
    tokens.push_back(json::array({t.surface, t.char_start, t.char_end, text::to_string(t.pos)}));
  }
  return json{{"source_id", s.source_id}, {"text", s.text}, {"tokens", tokens}};
}

GatewayFailure failure_from(const llm::GatewayError& e, const CallLog& log) {
  GatewayFailure f{log.step, std::string(llm::to_string(e.kind())), e.what(), std::nullopt};
  if (e.digest()) f.digest = e.digest()->hex();
  return f;
}

std::vector<llm::Digest> slice_digests(const std::vector<llm::Digest>& all, std::size_t from) {
  return {all.begin() + static_cast<std::ptrdiff_t>(std::min(from, all.size())), all.end()};
}

json labels_json(const std::vector<Decision>& decisions) {
  json out = json::array();
  for (const auto& d : decisions) out.push_back(to_string(d.label));
  return out;
}

json evidence_array(const std::vector<Rationale>& rationales) {
  json out = json::array();
  for (const auto& r : rationales) out.push_back(evidence_to_json(r));
  return out;
}

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string failure_summary(const GatewayFailure& f) {
  return "gateway " + f.kind + " at " + f.step + "; instance abstained";
}

// Records classification and rationale-generation once decisions and
// rationales are final.
void close_trace(StageTracker& tracker, const json& analysis, const SentenceRun& run) {
  tracker.record("classification", analysis, labels_json(run.decisions));
  json rationale_out = json::array();
  for (const auto& r : run.rationales) {
    rationale_out.push_back(json{{"step", r.triggering_step},
                                 {"confidence", to_string(r.confidence)},
                                 {"evidence", evidence_to_json(r)}});
  }
  tracker.record("rationale-generation", labels_json(run.decisions), rationale_out);
}

// Protocol A ---------------------------------------------------------------

void run_mip(const ProtocolConfig& cfg, const text::Sentence& s, llm::Gateway& gw,
             StageTracker& tracker, SentenceRun& run) {
  const auto candidates = mip::select_candidates(s, cfg.params.candidate_pos);
  tracker.record("candidate-selection", sentence_json(s), json(candidates));

  std::vector<llm::Digest> all;
  for (const auto idx : candidates) {
    const auto& tok = s.tokens[idx];
    Rationale r;
    MipEvidence ev{idx, tok.surface, tok.char_start, tok.char_end, std::nullopt};
    CallLog log;
    try {
      ev.pair = mip::analyze_word(s, idx, cfg.params.dictionary, gw, cfg.params.templates, log);
    } catch (const llm::GatewayError& e) {
      r.failure = failure_from(e, log);
    }
    r.evidence = ev;
    r.llm_digests = log.digests;
    all.insert(all.end(), log.digests.begin(), log.digests.end());
    run.rationales.push_back(std::move(r));
  }
  const json analysis = evidence_array(run.rationales);
  tracker.record("semantic-analysis", json(candidates), analysis, all);

  for (auto& r : run.rationales) {
    const auto& ev = std::get<MipEvidence>(r.evidence);
    Decision d{Label::Abstain, Granularity::Token, s.source_id, ev.token_index};
    if (r.failure) {
      r.triggering_step = r.failure->step;
      r.confidence = Confidence::Low;
      r.summary = failure_summary(*r.failure);
    } else {
      const auto& p = *ev.pair;
      d.label = mip::classify(p);
      const bool contrasts = p.contrasts.value_or(false);
      r.triggering_step = contrasts ? "comparison-comprehension" : "meaning-contrast";
      r.confidence = p.basic_source == BasicSource::Dictionary ? Confidence::High : Confidence::Medium;
      const std::string head = squote(p.word) + ": contextual " + squote(p.contextual) + ", basic " +
                               squote(p.basic) + " (" + std::string(to_string(p.basic_source)) + ")";
      if (d.label == Label::Metaphorical) {
        r.summary = head + "; meanings contrast and the contextual sense is understood by comparison";
      } else if (!contrasts) {
        r.summary = head + "; no contrast between the meanings";
      } else {
        r.summary = head + "; meanings contrast but no comparison links them";
      }
      if (p.implicit != ImplicitMetaphor::None) {
        r.annotations.push_back("implicit metaphor flag: " + std::string(to_string(p.implicit)));
      }
    }
    run.decisions.push_back(d);
  }
  close_trace(tracker, analysis, run);
}

// Protocol B ---------------------------------------------------------------

void run_conceptual(const ProtocolConfig& cfg, const text::Sentence& s, llm::Gateway& gw,
                    StageTracker& tracker, SentenceRun& run) {
  CallLog log;
  Rationale r;
  ConceptEvidence ev;
  std::optional<CharSpan> vehicle;
  try {
    vehicle = conceptual::identify_vehicle(s, gw, cfg.params.templates, log);
  } catch (const llm::GatewayError& e) {
    r.failure = failure_from(e, log);
  }
  tracker.record("candidate-selection", sentence_json(s), vehicle ? to_json(*vehicle) : json(nullptr),
                 log.digests);

  const std::size_t mark = log.digests.size();
  if (vehicle && !r.failure) {
    try {
      ev.triple = conceptual::complete_triple(s, *vehicle, cfg.params.domain_taxonomy, gw,
                                              cfg.params.templates, log);
    } catch (const llm::GatewayError& e) {
      r.failure = failure_from(e, log);
    }
  }
  r.evidence = ev;
  r.llm_digests = log.digests;
  const json analysis = evidence_to_json(r);
  tracker.record("semantic-analysis", vehicle ? to_json(*vehicle) : json(nullptr), analysis,
                 slice_digests(log.digests, mark));

  Decision d{Label::Abstain, Granularity::Sentence, s.source_id, std::nullopt};
  if (r.failure) {
    r.triggering_step = r.failure->step;
    r.confidence = Confidence::Low;
    r.summary = failure_summary(*r.failure);
  } else if (!vehicle) {
    d.label = Label::Literal;
    r.triggering_step = "vehicle-identification";
    r.confidence = Confidence::Medium;
    r.summary = "no vehicle expression identified";
  } else if (!ev.triple) {
    d.label = Label::Literal;
    r.triggering_step = "tenor-identification";
    r.confidence = Confidence::Medium;
    r.summary = "vehicle " + squote(vehicle->text) + " has no identifiable tenor";
  } else {
    auto triple = conceptual::validate_triple(*ev.triple);
    d.label = conceptual::classify(triple);
    r.triggering_step = "triple-validation";
    const std::string head = "tenor " + squote(triple.tenor.text) + " (" +
                             std::string(to_string(*triple.tenor_domain)) + "), vehicle " +
                             squote(triple.vehicle.text) + " (" +
                             std::string(to_string(*triple.vehicle_domain)) + ")";
    if (*triple.coherent) {
      r.confidence = Confidence::High;
      r.summary = head + ", ground " + squote(triple.ground);
    } else {
      r.confidence = Confidence::Medium;
      std::vector<std::string> why;
      if (triple.ground.empty()) why.emplace_back("ground not extracted");
      if (triple.tenor_domain == triple.vehicle_domain) why.emplace_back("same domain");
      if (triple.tenor.overlaps(triple.vehicle)) why.emplace_back("tenor and vehicle overlap");
      std::string reasons;
      for (const auto& w : why) reasons += (reasons.empty() ? "" : ", ") + w;
      r.summary = head + "; triple incoherent: " + reasons;
    }
    ev.triple = triple;
    r.evidence = ev;
  }
  run.decisions.push_back(d);
  run.rationales.push_back(std::move(r));
  close_trace(tracker, analysis, run);
}

// Protocol C ---------------------------------------------------------------

void run_emotion(const ProtocolConfig& cfg, const text::Sentence& s, llm::Gateway& gw,
                 StageTracker& tracker, SentenceRun& run) {
  CallLog log;
  Rationale r;
  EmotionEvidence ev;
  std::optional<Valence> valence;
  try {
    valence = emotion::sentence_valence(s, gw, cfg.params.templates, log);
  } catch (const llm::GatewayError& e) {
    r.failure = failure_from(e, log);
  }
  const json valence_json = valence ? json(to_string(*valence)) : json(nullptr);
  tracker.record("candidate-selection", sentence_json(s), valence_json, log.digests);

  const std::size_t mark = log.digests.size();
  if (valence) {
    try {
      ev.assessment = emotion::assess_incongruity(s, *valence, gw, cfg.params.templates, log);
    } catch (const llm::GatewayError& e) {
      r.failure = failure_from(e, log);
    }
  }
  r.evidence = ev;
  r.llm_digests = log.digests;
  const json analysis = evidence_to_json(r);
  tracker.record("semantic-analysis", valence_json, analysis, slice_digests(log.digests, mark));

  Decision d{Label::Abstain, Granularity::Sentence, s.source_id, std::nullopt};
  if (r.failure) {
    r.triggering_step = r.failure->step;
    r.confidence = Confidence::Low;
    r.summary = failure_summary(*r.failure);
  } else {
    const auto& a = *ev.assessment;
    d.label = emotion::classify(a);
    const std::string head = "sentence valence " + std::string(to_string(a.sentence_valence));
    if (!a.incongruent_span) {
      r.triggering_step = "valence-incongruity";
      r.confidence = Confidence::Medium;
      r.summary = head + "; no incongruent expression";
    } else {
      r.triggering_step = "figurative-resolution";
      const std::string mid = head + "; " + squote(a.incongruent_span->text) + " literal " +
                              std::string(to_string(*a.literal_valence)) + ", in context " +
                              std::string(to_string(*a.figurative_valence));
      if (a.resolvable) {
        r.confidence = Confidence::Medium;
        r.summary = mid + "; resolved by a figurative reading";
      } else {
        r.confidence = Confidence::Low;
        r.summary = mid + "; not resolved by a figurative reading";
      }
    }
  }
  run.decisions.push_back(d);
  run.rationales.push_back(std::move(r));
  close_trace(tracker, analysis, run);
}

// Protocol D ---------------------------------------------------------------

void run_simile(const ProtocolConfig& cfg, const text::Sentence& s, llm::Gateway& gw,
                StageTracker& tracker, SentenceRun& run) {
  SimileEvidence ev;
  ev.markers = simile::detect_markers(s.text, cfg.params.markers);
  json markers_json = json::array();
  for (const auto& m : ev.markers) markers_json.push_back(to_json(m));
  tracker.record("candidate-selection", sentence_json(s), markers_json);

  CallLog log;
  Rationale r;
  bool confirmed = false;
  for (const auto& marker : ev.markers) {
    try {
      auto construct = simile::extract_comparison(s, marker, gw, cfg.params.templates, log);
      if (!construct) continue;
      ev.constructs.push_back(simile::check_cross_domain(s, *construct, cfg.params.domain_taxonomy,
                                                         gw, cfg.params.templates, log));
      if (simile::classify(ev.constructs.back()) == Label::Metaphorical) {
        confirmed = true;
        break;
      }
    } catch (const llm::GatewayError& e) {
      r.failure = failure_from(e, log);
      break;
    }
  }
  r.evidence = ev;
  r.llm_digests = log.digests;
  const json analysis = evidence_to_json(r);
  tracker.record("semantic-analysis", markers_json, analysis, log.digests);

  Decision d{Label::Literal, Granularity::Sentence, s.source_id, std::nullopt};
  if (r.failure) {
    d.label = Label::Abstain;
    r.triggering_step = r.failure->step;
    r.confidence = Confidence::Low;
    r.summary = failure_summary(*r.failure);
  } else if (ev.markers.empty()) {
    r.triggering_step = "marker-detection";
    r.confidence = Confidence::High;
    r.summary = "no markers";
  } else if (ev.constructs.empty()) {
    r.triggering_step = "comparison-extraction";
    r.confidence = Confidence::Medium;
    r.summary = "markers present but none introduces a comparison";
  } else {
    const auto& c = ev.constructs.back();
    d.label = confirmed ? Label::Metaphorical : Label::Literal;
    r.triggering_step = "cross-domain-check";
    r.confidence = Confidence::High;
    r.summary = squote(c.tenor.text) + " (" + std::string(to_string(*c.tenor_domain)) + ") " +
                c.marker.text + " " + squote(c.vehicle.text) + " (" +
                std::string(to_string(*c.vehicle_domain)) + "): " +
                (confirmed ? "cross-domain comparison" : "same-domain comparison");
  }
  run.decisions.push_back(d);
  run.rationales.push_back(std::move(r));
  close_trace(tracker, analysis, run);
}

}  // namespace

SentenceRun run_protocol(const ProtocolConfig& config, const text::Sentence& sentence,
                         llm::Gateway& gateway) {
  SentenceRun run;
  run.source_id = sentence.source_id;
  run.protocol = config.protocol_id;
  StageTracker tracker(sentence.source_id);
  tracker.record("preprocessing", json{{"text", sentence.text}}, sentence_json(sentence));
  switch (config.protocol_id) {
    case ProtocolId::A:
      run_mip(config, sentence, gateway, tracker, run);
      break;
    case ProtocolId::B:
      run_conceptual(config, sentence, gateway, tracker, run);
      break;
    case ProtocolId::C:
      run_emotion(config, sentence, gateway, tracker, run);
      break;
    case ProtocolId::D:
      run_simile(config, sentence, gateway, tracker, run);
      break;
  }
  run.trace = std::move(tracker).finish();
  return run;
}

std::vector<SentenceRun> run_dataset(const ProtocolConfig& config,
                                     const std::vector<text::Sentence>& sentences,
                                     llm::Gateway& gateway, unsigned threads) {
  std::vector<SentenceRun> out(sentences.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sentences.size()) return;
      try {
        out[i] = run_protocol(config, sentences[i], gateway);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sentences.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  std::stable_sort(out.begin(), out.end(),
                   [](const SentenceRun& a, const SentenceRun& b) { return a.source_id < b.source_id; });
  return out;
}

std::vector<RationaleRecord> rationale_records(const ProtocolConfig& config, const SentenceRun& run) {
  std::vector<RationaleRecord> out;
  for (std::size_t i = 0; i < run.decisions.size(); ++i) {
    const auto& d = run.decisions[i];
    const auto& r = run.rationales[i];
    RationaleRecord rec;
    rec.source_id = d.source_id;
    rec.protocol_id = std::string(to_string(config.protocol_id));
    rec.config_version = config.version;
    rec.target = d.token_index ? json(*d.token_index) : json(d.source_id);
    rec.label = std::string(to_string(d.label));
    rec.triggering_step = r.triggering_step;
    rec.evidence = evidence_to_json(r);
    rec.confidence = std::string(to_string(r.confidence));
    for (const auto& dg : r.llm_digests) rec.llm_digests.push_back(dg.hex());
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<RationaleRecord> rationale_records(const ProtocolConfig& config,
                                               const std::vector<SentenceRun>& runs) {
  std::vector<RationaleRecord> out;
  for (const auto& run : runs) {
    auto recs = rationale_records(config, run);
    out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return out;
}

json to_json(const RationaleRecord& r) {
  return json{{"source_id", r.source_id},
              {"protocol_id", r.protocol_id},
              {"config_version", r.config_version},
              {"target", r.target},
              {"label", r.label},
              {"triggering_step", r.triggering_step},
              {"evidence", r.evidence},
              {"confidence", r.confidence},
              {"llm_digests", r.llm_digests}};
}

RationaleRecord rationale_from_json(const json& j) {
  try {
    RationaleRecord r;
    r.source_id = j.at("source_id").get<std::string>();
    r.protocol_id = j.at("protocol_id").get<std::string>();
    r.config_version = j.at("config_version").get<std::string>();
    r.target = j.at("target");
    r.label = j.at("label").get<std::string>();
    r.triggering_step = j.at("triggering_step").get<std::string>();
    r.evidence = j.at("evidence");
    r.confidence = j.at("confidence").get<std::string>();
    r.llm_digests = j.at("llm_digests").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("bad rationale record: ") + ex.what());
  }
}

std::string serialize_rationales(const std::vector<RationaleRecord>& records) {
  if (records.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out += to_json(records[i]).dump();
    out += i + 1 < records.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

std::vector<RationaleRecord> parse_rationales(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed rationale file: ") + ex.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("rationale file must hold a JSON array");
  std::vector<RationaleRecord> out;
  for (const auto& j : doc) out.push_back(rationale_from_json(j));
  return out;
}

namespace {

data::GoldSpan to_gold(data::SpanRole role, const CharSpan& span) {
  return data::GoldSpan{role, span.start, span.end, span.text};
}

struct SpanVisitor {
  std::vector<data::GoldSpan>& out;
  void operator()(const MipEvidence&) const {}
  void operator()(const ConceptEvidence& e) const {
    if (!e.triple) return;
    out.push_back(to_gold(data::SpanRole::Tenor, e.triple->tenor));
    out.push_back(to_gold(data::SpanRole::Vehicle, e.triple->vehicle));
    if (!e.triple->ground.empty()) {
      out.push_back(data::GoldSpan{data::SpanRole::Ground, std::nullopt, std::nullopt, e.triple->ground});
    }
  }
  void operator()(const EmotionEvidence& e) const {
    if (e.assessment && e.assessment->incongruent_span) {
      out.push_back(to_gold(data::SpanRole::Figure, *e.assessment->incongruent_span));
    }
  }
  void operator()(const SimileEvidence& e) const {
    for (const auto& c : e.constructs) {
      out.push_back(to_gold(data::SpanRole::Tenor, c.tenor));
      out.push_back(to_gold(data::SpanRole::Vehicle, c.vehicle));
    }
  }
};

}  // namespace

std::vector<data::Prediction> predictions(const std::vector<SentenceRun>& runs) {
  std::vector<data::Prediction> out;
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < run.decisions.size(); ++i) {
      const auto& d = run.decisions[i];
      const auto& r = run.rationales[i];
      data::Prediction p;
      p.source_id = d.source_id;
      p.label = std::string(to_string(d.label));
      if (d.token_index) {
        const auto& ev = std::get<MipEvidence>(r.evidence);
        p.target = *d.token_index;
        p.char_start = ev.char_start;
        p.char_end = ev.char_end;
      } else {
        p.target = d.source_id;
        std::visit(SpanVisitor{p.spans}, r.evidence);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string serialize_traces(const std::vector<SentenceRun>& runs) {
  std::string out;
  for (const auto& run : runs) {
    out += to_json(run.trace).dump();
    out += '\n';
  }
  return out;
}

}  // namespace figura::engine
