#include "figura/llm/templates.hpp"

#include <algorithm>
#include <stdexcept>

#include "figura/llm/errors.hpp"

namespace figura::llm {

namespace {

const std::vector<std::string> kYesNo = {"yes", "no"};
const std::vector<std::string> kValences = {"positive", "negative", "neutral", "mixed"};
const std::vector<std::string> kDomains = {"HUMAN",  "ANIMAL", "PLANT", "OBJECT", "NATURAL_PHENOMENON",
                                           "ABSTRACT", "EVENT", "PLACE", "BODY",   "OTHER"};

struct Builtin {
  std::string_view id;
  std::string_view schema;
  std::string_view text;
};

// Each prompt asks for exactly one narrowly scoped judgement and fixes the
// output format to `name: value` lines.
constexpr Builtin kBuiltins[] = {
    {templates::kContextualMeaning, "contextual_meaning",
     "任务：确定词语在句中的语境意义。\n"
     "句子：{sentence}\n"
     "目标词：{word}\n"
     "用一句简短的话说明目标词在这个句子里表达的意义，不要解释理由。\n"
     "只输出一行，格式如下：\n"
     "contextual: <语境意义>"},
    {templates::kBasicMeaning, "basic_meaning",
     "任务：给出词语最基本的意义。\n"
     "目标词：{word}\n"
     "列举该词的主要义项，选出其中最具体、最贴近身体经验或物理世界、历史上最早的义项。\n"
     "只输出一行，格式如下：\n"
     "basic: <基本意义>"},
    {templates::kMeaningContrast, "meaning_contrast",
     "任务：比较词语的语境意义与基本意义。\n"
     "句子：{sentence}\n"
     "目标词：{word}\n"
     "语境意义：{contextual}\n"
     "基本意义：{basic}\n"
     "判断：(1) 语境意义是否与基本意义形成对比；(2) 语境意义能否通过与基本意义的比较来理解。\n"
     "若句中存在省略或替代造成的隐含隐喻，在 implicit 中注明。\n"
     "只输出以下各行：\n"
     "contrasts: <yes|no>\n"
     "comprehensible: <yes|no>\n"
     "implicit: <none|ellipsis|substitution>"},
    {templates::kVehicle, "vehicle_identification",
     "任务：找出句中被用于非字面领域的喻体表达。\n"
     "句子：{sentence}\n"
     "若没有喻体，输出 NONE。喻体必须是句中原文的一个连续片段。\n"
     "只输出一行：\n"
     "vehicle: <喻体原文|NONE>"},
    {templates::kTenor, "tenor_identification",
     "任务：找出喻体所描述的本体。\n"
     "句子：{sentence}\n"
     "喻体：{vehicle}\n"
     "本体必须是句中原文的一个连续片段；若无法确定，输出 NONE。\n"
     "只输出一行：\n"
     "tenor: <本体原文|NONE>"},
    {templates::kGround, "ground_extraction",
     "任务：说明本体与喻体之间的共同特征（喻底）。\n"
     "句子：{sentence}\n"
     "本体：{tenor}\n"
     "喻体：{vehicle}\n"
     "若共同特征无法从句中推出，输出空值。\n"
     "只输出一行：\n"
     "ground: <共同特征>"},
    {templates::kDomainLabel, "domain_label",
     "任务：为表达指定概念领域。\n"
     "句子：{sentence}\n"
     "表达：{expression}\n"
     "从下列领域中选择一个：HUMAN, ANIMAL, PLANT, OBJECT, NATURAL_PHENOMENON, ABSTRACT, EVENT, "
     "PLACE, BODY, OTHER。\n"
     "只输出一行：\n"
     "domain: <领域>"},
    {templates::kSentenceValence, "sentence_valence",
     "任务：判断句子的主导情感倾向。\n"
     "句子：{sentence}\n"
     "只输出一行：\n"
     "valence: <positive|negative|neutral|mixed>"},
    {templates::kValenceIncongruity, "valence_incongruity",
     "任务：检查句中是否有表达的情感色彩与其字面意义在语境中不一致。\n"
     "句子：{sentence}\n"
     "句子主导情感：{valence}\n"
     "若存在，给出该表达的原文、字面情感与语境中的情感；若不存在，expression 输出 NONE 并省略其余两行。\n"
     "输出格式：\n"
     "expression: <原文|NONE>\n"
     "literal_valence: <positive|negative|neutral|mixed>\n"
     "figurative_valence: <positive|negative|neutral|mixed>"},
    {templates::kFigurativeResolution, "figurative_resolution",
     "任务：判断情感不一致能否通过比喻性解读得到消解。\n"
     "句子：{sentence}\n"
     "表达：{expression}\n"
     "字面情感：{literal_valence}\n"
     "语境情感：{figurative_valence}\n"
     "只输出一行：\n"
     "resolvable: <yes|no>"},
    {templates::kComparison, "comparison_extraction",
     "任务：抽取比较结构的本体和喻体。\n"
     "句子：{sentence}\n"
     "比较标记：{marker}\n"
     "本体和喻体必须是句中原文片段，且不包含比较标记本身。若该标记并未构成比较，两行都输出 NONE。\n"
     "输出格式：\n"
     "tenor: <本体原文|NONE>\n"
     "vehicle: <喻体原文|NONE>"},
};

std::vector<Schema> builtin_schemas() {
  return {
      {"contextual_meaning", {{"contextual", true, {}}}},
      {"basic_meaning", {{"basic", true, {}}}},
      {"meaning_contrast",
       {{"contrasts", true, kYesNo},
        {"comprehensible", true, kYesNo},
        {"implicit", false, {"none", "ellipsis", "substitution"}}}},
      {"vehicle_identification", {{"vehicle", true, {}}}},
      {"tenor_identification", {{"tenor", true, {}}}},
      {"ground_extraction", {{"ground", true, {}}}},
      {"domain_label", {{"domain", true, kDomains}}},
      {"sentence_valence", {{"valence", true, kValences}}},
      {"valence_incongruity",
       {{"expression", true, {}},
        {"literal_valence", false, kValences},
        {"figurative_valence", false, kValences}}},
      {"figurative_resolution", {{"resolvable", true, kYesNo}}},
      {"comparison_extraction", {{"tenor", true, {}}, {"vehicle", true, {}}}},
  };
}

}  // namespace

TemplateRegistry TemplateRegistry::builtin() {
  TemplateRegistry reg;
  for (auto& schema : builtin_schemas()) reg.add_schema(std::move(schema));
  for (const auto& b : kBuiltins) {
    reg.add_template(PromptTemplate{std::string(b.id), std::string(b.text), std::string(b.schema)});
  }
  return reg;
}

void TemplateRegistry::add_schema(Schema schema) {
  if (schema.id.empty()) throw std::invalid_argument("schema id must not be empty");
  const auto it = schemas_.find(schema.id);
  if (it != schemas_.end()) {
    throw std::invalid_argument("schema '" + schema.id + "' already registered");
  }
  schemas_.emplace(schema.id, std::move(schema));
}

void TemplateRegistry::add_template(PromptTemplate tmpl) {
  if (tmpl.id.empty()) throw std::invalid_argument("template id must not be empty");
  if (!schemas_.contains(tmpl.schema_id)) {
    throw std::invalid_argument("template '" + tmpl.id + "' references unknown schema '" +
                                tmpl.schema_id + "'");
  }
  placeholders(tmpl.text);  // validates syntax
  const auto it = templates_.find(tmpl.id);
  if (it != templates_.end()) {
    if (it->second.text != tmpl.text || it->second.schema_id != tmpl.schema_id) {
      throw std::invalid_argument("template '" + tmpl.id +
                                  "' already registered with different content; use a new id");
    }
    return;
  }
  templates_.emplace(tmpl.id, std::move(tmpl));
}

bool TemplateRegistry::has_template(std::string_view id) const { return templates_.contains(id); }

const PromptTemplate& TemplateRegistry::get_template(std::string_view id) const {
  const auto it = templates_.find(id);
  if (it == templates_.end()) throw UnknownTemplate(std::string(id));
  return it->second;
}

const Schema& TemplateRegistry::schema(std::string_view id) const {
  const auto it = schemas_.find(id);
  if (it == schemas_.end()) throw UnknownTemplate("schema:" + std::string(id));
  return it->second;
}

std::vector<std::string> TemplateRegistry::slot_names(std::string_view template_id) const {
  return placeholders(get_template(template_id).text);
}

LLMRequest TemplateRegistry::make_request(std::string_view template_id, SlotMap slots) const {
  const auto& tmpl = get_template(template_id);
  LLMRequest req;
  req.template_id = tmpl.id;
  req.slots = std::move(slots);
  req.schema_id = tmpl.schema_id;
  return req;
}

std::vector<std::string> TemplateRegistry::template_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : templates_) ids.push_back(id);
  return ids;
}

std::vector<std::string> placeholders(std::string_view text) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      if (i + 1 < text.size() && text[i + 1] == '{') {
        ++i;
        continue;
      }
      const auto close = text.find('}', i + 1);
      if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder");
      std::string name(text.substr(i + 1, close - i - 1));
      if (name.empty()) throw std::invalid_argument("empty placeholder");
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      i = close;
    } else if (text[i] == '}' && i + 1 < text.size() && text[i + 1] == '}') {
      ++i;
    }
  }
  return names;
}

std::string render_prompt(const TemplateRegistry& registry, std::string_view template_id,
                          const SlotMap& slots) {
  const auto& tmpl = registry.get_template(template_id);
  const std::string_view text = tmpl.text;
  std::string out;
  out.reserve(text.size() + 64);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '{' && i + 1 < text.size() && text[i + 1] == '{') {
      out.push_back('{');
      ++i;
    } else if (c == '}' && i + 1 < text.size() && text[i + 1] == '}') {
      out.push_back('}');
      ++i;
    } else if (c == '{') {
      const auto close = text.find('}', i + 1);
      const std::string name(text.substr(i + 1, close - i - 1));
      const auto it = slots.find(name);
      if (it == slots.end()) throw MissingSlot(tmpl.id, name);
      out += it->second;
      i = close;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

void validate_request(const TemplateRegistry& registry, const LLMRequest& request,
                      bool allow_nonzero_temperature) {
  const auto& tmpl = registry.get_template(request.template_id);
  for (const auto& name : placeholders(tmpl.text)) {
    if (!request.slots.contains(name)) throw MissingSlot(tmpl.id, name);
  }
  if (request.schema_id != tmpl.schema_id) {
    throw GatewayError(GatewayErrorKind::InvalidRequest,
                       "request schema '" + request.schema_id + "' does not match template '" +
                           tmpl.id + "'");
  }
  if (request.max_tokens <= 0) {
    throw GatewayError(GatewayErrorKind::InvalidRequest, "max_tokens must be positive");
  }
  if (!allow_nonzero_temperature && request.temperature != 0.0) {
    throw GatewayError(GatewayErrorKind::InvalidRequest, "temperature must be 0");
  }
}

}  // namespace figura::llm
