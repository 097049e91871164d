#include "artist/serialization.hpp"

#include <cstdio>

#include "artist/error.hpp"

namespace artist {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, what);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) bad("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) bad(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

template <typename Int>
Int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer())
    bad(std::string("field \"") + name + "\" must be an integer");
  return v.get<Int>();
}

double number_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) bad(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round_display(v));
  return buf;
}

}  // namespace

void to_json(json& j, const Span& span) { j = json::array({span.begin, span.end}); }

void from_json(const json& j, Span& span) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
      !j[1].is_number_unsigned())
    bad("span must be [begin, end]");
  span.begin = j[0].get<std::size_t>();
  span.end = j[1].get<std::size_t>();
  if (span.end < span.begin) bad("span end precedes begin");
}

void to_json(json& j, const TextStats& stats) {
  j = json{{"n_sentences", stats.n_sentences},
           {"n_words", stats.n_words},
           {"n_syllables", stats.n_syllables},
           {"n_polysyllables", stats.n_polysyllables},
           {"language", to_string(stats.language)}};
}

void to_json(json& j, const ReadabilityReport& report) {
  j = json{{"language", to_string(report.language)},
           {"text_scores", report.text_scores},
           {"warnings", report.warnings},
           {"stats", report.stats}};
  if (report.text_scores.count(std::string(to_string(Metric::spache)))) {
    json sentences = json::array();
    for (const auto& s : report.sentence_scores)
      sentences.push_back({{"sentence_index", s.index}, {"spache", s.spache}});
    j["sentence_scores"] = std::move(sentences);
  }
}

void to_json(json& j, const Finding& f) {
  j = json{{"check_id", to_string(f.check_id)},
           {"severity", to_string(f.severity)},
           {"message", f.message},
           {"source_span", f.source_span ? json(*f.source_span) : json(nullptr)},
           {"simplified_span",
            f.simplified_span ? json(*f.simplified_span) : json(nullptr)}};
}

void from_json(const json& j, Finding& f) {
  const auto id = parse_check_id(string_field(j, "check_id"));
  const auto sev = parse_severity(string_field(j, "severity"));
  if (!id || !sev) bad("unknown check_id or severity");
  f.check_id = *id;
  f.severity = *sev;
  f.message = string_field(j, "message");
  f.source_span.reset();
  f.simplified_span.reset();
  if (j.contains("source_span") && !j["source_span"].is_null())
    f.source_span = j["source_span"].get<Span>();
  if (j.contains("simplified_span") && !j["simplified_span"].is_null())
    f.simplified_span = j["simplified_span"].get<Span>();
}

void to_json(json& j, const DiagnosticsConfig& c) {
  j = json{{"max_sentence_words", c.max_sentence_words},
           {"min_sentence_words", c.min_sentence_words},
           {"freq_threshold", c.freq_threshold},
           {"compression_ratio_floor", c.compression_ratio_floor},
           {"acronym_min_length", c.acronym_min_length},
           {"acronym_max_length", c.acronym_max_length}};
}

void from_json(const json& j, DiagnosticsConfig& c) {
  if (!j.is_object()) bad("diagnostics config must be an object");
  DiagnosticsConfig out;
  if (j.contains("max_sentence_words"))
    out.max_sentence_words = int_field<int>(j, "max_sentence_words");
  if (j.contains("min_sentence_words"))
    out.min_sentence_words = int_field<int>(j, "min_sentence_words");
  if (j.contains("freq_threshold"))
    out.freq_threshold = number_field(j, "freq_threshold");
  if (j.contains("compression_ratio_floor"))
    out.compression_ratio_floor = number_field(j, "compression_ratio_floor");
  if (j.contains("acronym_min_length"))
    out.acronym_min_length = int_field<int>(j, "acronym_min_length");
  if (j.contains("acronym_max_length"))
    out.acronym_max_length = int_field<int>(j, "acronym_max_length");
  out.validate();
  c = out;
}

void to_json(json& j, const SimplificationResult& r) {
  json stages = json::array();
  for (const auto& s : r.stage_outputs)
    stages.push_back({{"stage", s.stage}, {"text", s.text}});
  json subs = json::array();
  for (const auto& s : r.substitutions)
    subs.push_back({{"original", s.original},
                    {"replacement", s.replacement},
                    {"source_span", s.source_span}});
  json considered = json::array();
  for (const auto& c : r.considered)
    considered.push_back({{"word", c.word}, {"source_span", c.source_span}});
  j = json{{"source", r.source},
           {"simplified", r.simplified},
           {"backend_id", r.backend_id},
           {"stage_outputs", std::move(stages)},
           {"substitutions", std::move(subs)},
           {"considered", std::move(considered)},
           {"latency_ms", r.latency_ms}};
}

void to_json(json& j, const SariScore& s) {
  j = json{{"add_f1", s.add_f1},
           {"keep_f1", s.keep_f1},
           {"del_precision", s.del_precision},
           {"overall", s.overall}};
}

void to_json(json& j, const CorpusEvalRow& row) {
  j = json{{"topic_id", row.topic_id},
           {"backend_id", row.backend_id},
           {"metric", to_string(row.metric)},
           {"score", row.score}};
}

void from_json(const json& j, CorpusEvalRow& row) {
  const auto metric = parse_eval_metric(string_field(j, "metric"));
  if (!metric) bad("unknown metric");
  row.topic_id = string_field(j, "topic_id");
  row.backend_id = string_field(j, "backend_id");
  row.metric = *metric;
  row.score = number_field(j, "score");
}

void to_json(json& j, const CorpusEvalTable& table) {
  j = json{{"rows", table.rows}, {"failed", table.failed}};
}

void to_json(json& j, const RatingRecord& r) {
  j = json{{"topic_id", r.topic_id},   {"backend_id", r.backend_id},
           {"rater_id", r.rater_id},   {"simplicity", r.simplicity},
           {"fluency", r.fluency},     {"adequacy", r.adequacy}};
}

void from_json(const json& j, RatingRecord& r) {
  RatingRecord out;
  out.topic_id = string_field(j, "topic_id");
  out.backend_id = j.contains("backend_id") ? string_field(j, "backend_id") : "";
  out.rater_id = j.contains("rater_id") ? string_field(j, "rater_id") : "";
  out.simplicity = int_field<int>(j, "simplicity");
  out.fluency = int_field<int>(j, "fluency");
  out.adequacy = int_field<int>(j, "adequacy");
  if (out.topic_id.empty()) bad("topic_id must not be empty");
  out.validate();
  r = std::move(out);
}

void to_json(json& j, const RatingMeans& m) {
  j = json{{"simplicity", m.simplicity},
           {"fluency", m.fluency},
           {"adequacy", m.adequacy},
           {"count", m.count},
           {"display",
            {{"simplicity", one_decimal(m.simplicity)},
             {"fluency", one_decimal(m.fluency)},
             {"adequacy", one_decimal(m.adequacy)}}}};
}

void to_json(json& j, const BackendConfig& c) {
  j = json{{"backend_id", c.backend_id},
           {"kind", to_string(c.kind)},
           {"timeout_ms", c.timeout_ms},
           {"model_params", c.model_params},
           {"source_language", to_string(c.source_language)},
           {"pivot_language", to_string(c.pivot_language)}};
  if (c.endpoint_url) j["endpoint_url"] = *c.endpoint_url;
  if (c.translator_urls)
    j["translator_urls"] = {{"forward", c.translator_urls->forward},
                            {"backward", c.translator_urls->backward}};
  if (c.lexical_params)
    j["lexical_params"] = {
        {"freq_threshold", c.lexical_params->freq_threshold},
        {"max_substitutions_per_sentence",
         c.lexical_params->max_substitutions_per_sentence}};
  if (c.inner) j["inner"] = *c.inner;
}

void from_json(const json& j, BackendConfig& c) {
  BackendConfig out;
  out.backend_id = string_field(j, "backend_id");
  const auto kind = parse_backend_kind(string_field(j, "kind"));
  if (!kind) bad(out.backend_id + ": unknown backend kind");
  out.kind = *kind;
  if (j.contains("timeout_ms")) out.timeout_ms = int_field<int>(j, "timeout_ms");
  if (j.contains("endpoint_url")) out.endpoint_url = string_field(j, "endpoint_url");
  if (j.contains("model_params")) {
    const json& p = j["model_params"];
    if (!p.is_object()) bad(out.backend_id + ": model_params must be an object");
    for (const auto& [k, v] : p.items()) {
      if (!v.is_string()) bad(out.backend_id + ": model_params values must be strings");
      out.model_params[k] = v.get<std::string>();
    }
  }
  if (j.contains("translator_urls")) {
    const json& t = j["translator_urls"];
    out.translator_urls =
        TranslatorUrls{string_field(t, "forward"), string_field(t, "backward")};
  }
  if (j.contains("lexical_params")) {
    const json& p = j["lexical_params"];
    LexicalParams lp;
    if (p.contains("freq_threshold")) lp.freq_threshold = number_field(p, "freq_threshold");
    if (p.contains("max_substitutions_per_sentence"))
      lp.max_substitutions_per_sentence =
          int_field<int>(p, "max_substitutions_per_sentence");
    out.lexical_params = lp;
  }
  if (j.contains("inner")) {
    json inner = j["inner"];
    if (inner.is_object() && !inner.contains("backend_id"))
      inner["backend_id"] = out.backend_id + ".inner";
    out.inner = std::make_shared<BackendConfig>(inner.get<BackendConfig>());
  }
  auto lang = [&](const char* name, Language fallback) {
    if (!j.contains(name)) return fallback;
    const auto l = parse_language(string_field(j, name));
    if (!l) bad(out.backend_id + ": unknown language");
    return *l;
  };
  out.source_language = lang("source_language", Language::nl);
  out.pivot_language = lang("pivot_language", Language::en);
  out.validate();
  c = std::move(out);
}

json without_latency(json j) {
  if (j.is_object()) {
    j.erase("latency_ms");
    for (auto& item : j.items()) item.value() = without_latency(std::move(item.value()));
  } else if (j.is_array()) {
    for (auto& v : j) v = without_latency(std::move(v));
  }
  return j;
}

std::string dump_json(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace artist
