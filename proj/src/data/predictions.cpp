#include "figura/data/predictions.hpp"

#include <fstream>
#include <stdexcept>

#include "figura/data/dataset.hpp"

namespace figura::data {

using nlohmann::json;

json to_json(const Prediction& p) {
  json j{{"source_id", p.source_id}, {"target", p.target}, {"label", p.label}};
  if (p.char_start) j["char_start"] = *p.char_start;
  if (p.char_end) j["char_end"] = *p.char_end;
  if (!p.spans.empty()) {
    json spans = json::array();
    for (const auto& s : p.spans) {
      json o{{"role", to_string(s.role)}, {"text", s.text}};
      if (s.start) o["start"] = *s.start;
      if (s.end) o["end"] = *s.end;
      spans.push_back(std::move(o));
    }
    j["spans"] = std::move(spans);
  }
  return j;
}

Prediction prediction_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("prediction must be a JSON object");
  Prediction p;
  try {
    p.source_id = j.at("source_id").get<std::string>();
    p.target = j.at("target");
    p.label = j.at("label").get<std::string>();
    if (j.contains("char_start")) p.char_start = j.at("char_start").get<std::size_t>();
    if (j.contains("char_end")) p.char_end = j.at("char_end").get<std::size_t>();
    if (j.contains("spans")) {
      for (const auto& s : j.at("spans")) {
        GoldSpan span;
        const auto role = parse_span_role(s.at("role").get<std::string>());
        if (!role) throw std::invalid_argument("unknown span role");
        span.role = *role;
        span.text = s.value("text", std::string());
        if (s.contains("start")) span.start = s.at("start").get<std::size_t>();
        if (s.contains("end")) span.end = s.at("end").get<std::size_t>();
        p.spans.push_back(std::move(span));
      }
    }
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("bad prediction record: ") + ex.what());
  }
  if (p.label != "METAPHORICAL" && p.label != "LITERAL" && p.label != "ABSTAIN") {
    throw std::invalid_argument("unknown prediction label '" + p.label + "'");
  }
  if (!p.target.is_string() && !p.target.is_number_integer()) {
    throw std::invalid_argument("target must be a token index or a source id");
  }
  return p;
}

std::string serialize_predictions(const std::vector<Prediction>& predictions) {
  std::string out;
  for (const auto& p : predictions) {
    out += to_json(p).dump();
    out += '\n';
  }
  return out;
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(prediction_from_json(json::parse(line)));
    } catch (const json::exception& ex) {
      throw ParseError(lineno, std::string("malformed JSON: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw ParseError(lineno, ex.what());
    }
  }
  return out;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path.string());
  return read_predictions(in);
}

}  // namespace figura::data
