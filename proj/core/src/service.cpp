#include "artist/service.hpp"

#include <algorithm>
#include <filesystem>

#include <httplib.h>

#include "artist/diagnostics.hpp"
#include "artist/serialization.hpp"

namespace artist {

namespace {

[[noreturn]] void bad_request(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, what);
}

const json& require_object(const json& body) {
  if (!body.is_object()) bad_request("request body must be a JSON object");
  return body;
}

std::string get_string(const json& body, const char* name) {
  const auto it = body.find(name);
  if (it == body.end() || !it->is_string())
    bad_request(std::string("\"") + name + "\" must be a string");
  return it->get<std::string>();
}

std::optional<std::string> opt_string(const json& body, const char* name) {
  const auto it = body.find(name);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) bad_request(std::string("\"") + name + "\" must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& body, const char* name) {
  std::vector<std::string> out;
  const auto it = body.find(name);
  if (it == body.end() || it->is_null()) return out;
  if (!it->is_array()) bad_request(std::string("\"") + name + "\" must be a list");
  for (const auto& v : *it) {
    if (!v.is_string()) bad_request(std::string("\"") + name + "\" entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Language language_field(const json& body, Language fallback) {
  const auto s = opt_string(body, "language");
  if (!s) return fallback;
  const auto lang = parse_language(*s);
  if (!lang) bad_request("unknown language '" + *s + "'");
  return *lang;
}

// Readability metrics plus the reference-based "bleu"/"sari" extras
// accepted by /simplify.
struct MetricSelection {
  std::vector<Metric> readability;
  bool bleu = false;
  bool sari = false;
};

MetricSelection parse_metrics(const json& body, bool allow_reference_metrics) {
  MetricSelection sel;
  const auto names = string_list(body, "metrics");
  if (names.empty() && (!body.contains("metrics") || body["metrics"].is_null())) {
    sel.readability = all_metrics();
    return sel;
  }
  for (const auto& name : names) {
    if (allow_reference_metrics && name == "bleu") {
      sel.bleu = true;
    } else if (allow_reference_metrics && name == "sari") {
      sel.sari = true;
    } else if (const auto m = parse_metric(name)) {
      if (std::find(sel.readability.begin(), sel.readability.end(), *m) ==
          sel.readability.end())
        sel.readability.push_back(*m);
    } else {
      bad_request("unknown metric '" + name + "'");
    }
  }
  if (sel.readability.empty() && !sel.bleu && !sel.sari)
    bad_request("\"metrics\" must not be empty");
  return sel;
}

const BackendConfig& backend_for(const Workbench& wb, const json& body) {
  const std::string id = get_string(body, "backend_id");
  const BackendConfig* cfg = wb.config.find_backend(id);
  if (!cfg) bad_request("unknown backend_id '" + id + "'");
  return *cfg;
}

Level level_field(const json& body, const char* name, Level fallback) {
  const auto s = opt_string(body, name);
  if (!s) return fallback;
  const auto level = parse_level(*s);
  if (!level) bad_request("unknown level '" + *s + "'");
  return *level;
}

std::size_t top_k_field(const json& body) {
  const auto it = body.find("top_k");
  if (it == body.end() || it->is_null()) return 5;
  if (!it->is_number_integer() || it->get<long long>() < 1)
    bad_request("\"top_k\" must be a positive integer");
  return it->get<std::size_t>();
}

Response error_response(const ApiError& e) { return {http_status(e.code), to_json_body(e)}; }

template <typename F>
Response guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_response(to_api_error(e));
  } catch (const json::exception& e) {
    return error_response({ApiErrorCode::bad_request, e.what(), std::nullopt});
  } catch (const std::exception& e) {
    return error_response({ApiErrorCode::internal, e.what(), std::nullopt});
  }
}

}  // namespace

std::string_view to_string(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::bad_request: return "bad_request";
    case ApiErrorCode::backend_unavailable: return "backend_unavailable";
    case ApiErrorCode::backend_timeout: return "backend_timeout";
    case ApiErrorCode::not_found: return "not_found";
    case ApiErrorCode::internal: return "internal";
  }
  return "internal";
}

int http_status(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::bad_request: return 400;
    case ApiErrorCode::backend_unavailable: return 502;
    case ApiErrorCode::backend_timeout: return 504;
    case ApiErrorCode::not_found: return 404;
    case ApiErrorCode::internal: return 500;
  }
  return 500;
}

static ApiErrorCode api_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::backend_unavailable:
    case ErrorCode::backend_bad_response:
      return ApiErrorCode::backend_unavailable;
    case ErrorCode::backend_timeout:
      return ApiErrorCode::backend_timeout;
    case ErrorCode::empty_scope:
    case ErrorCode::unknown_topic:
    case ErrorCode::unknown_corpus:
      return ApiErrorCode::not_found;
    case ErrorCode::io_error:
    case ErrorCode::stage_failed:
      return ApiErrorCode::internal;
    default:
      return ApiErrorCode::bad_request;
  }
}

ApiError to_api_error(const Error& e) {
  ApiError out{api_code(e.code()), e.what(), std::nullopt};
  if (const auto* sf = dynamic_cast<const StageFailed*>(&e)) {
    out.code = api_code(sf->underlying());
    out.detail = json{{"stage", sf->stage()}, {"cause", to_string(sf->underlying())}};
  } else if (is_backend_error(e.code())) {
    out.detail = json{{"cause", to_string(e.code())}};
  }
  return out;
}

json to_json_body(const ApiError& e) {
  json err = {{"code", to_string(e.code)}, {"message", e.message}};
  if (e.detail) err["detail"] = *e.detail;
  return json{{"error", std::move(err)}};
}

ReadabilityReport assess_request(const Workbench& wb, const json& body) {
  require_object(body);
  const std::string text = get_string(body, "text");
  const Language lang = language_field(body, wb.config.language);
  const auto sel = parse_metrics(body, false);
  return assess(text, lang, sel.readability, wb.assess_options);
}

CorpusEvalTable evaluate_request(const Workbench& wb, const json& body, unsigned jobs) {
  require_object(body);
  const std::string corpus_id = get_string(body, "corpus_id");
  const auto corpus = wb.corpora.find(corpus_id);
  if (corpus == wb.corpora.end())
    throw Error(ErrorCode::unknown_corpus, "unknown corpus_id '" + corpus_id + "'");
  const BackendConfig& backend = backend_for(wb, body);

  EvalMetric metric = EvalMetric::bleu;
  if (const auto s = opt_string(body, "metric")) {
    const auto m = parse_eval_metric(*s);
    if (!m) bad_request("unknown metric '" + *s + "'");
    metric = *m;
  }
  AggregationMode mode = AggregationMode::pooled;
  if (const auto s = opt_string(body, "mode")) {
    const auto m = parse_aggregation_mode(*s);
    if (!m) bad_request("unknown mode '" + *s + "'");
    mode = *m;
  }
  const Level complex = level_field(body, "complex_level", Level::upper_secondary);
  const Level simple = level_field(body, "simple_level", Level::primary);
  if (complex == simple) bad_request("complex_level and simple_level must differ");
  return evaluate_corpus(corpus->second, backend, wb.resources(), complex, simple, metric,
                         mode, top_k_field(body), jobs);
}

Service::Service(std::shared_ptr<const Workbench> workbench) : wb_(std::move(workbench)) {
  const auto& path = wb_->config.results_path;
  if (path && std::filesystem::exists(*path))
    ratings_ = load_eval_results_file(path->string()).ratings;
}

Response Service::simplify(const json& body) const {
  return guarded([&] {
    require_object(body);
    const std::string text = get_string(body, "text");
    const BackendConfig& backend = backend_for(*wb_, body);
    const auto sel = parse_metrics(body, true);
    const Language lang = language_field(body, wb_->config.language);
    bool diagnostics = false;
    if (body.contains("diagnostics")) {
      if (!body["diagnostics"].is_boolean()) bad_request("\"diagnostics\" must be a boolean");
      diagnostics = body["diagnostics"].get<bool>();
    }
    const auto references = string_list(body, "references");
    if ((sel.bleu || sel.sari) && references.empty())
      bad_request("\"references\" are required for bleu/sari");
    if (text.find_first_not_of(" \t\r\n\f\v") == std::string::npos)
      throw Error(ErrorCode::empty_text, "text is empty");

    const auto result = artist::simplify(text, backend, wb_->resources());
    json out = {{"result", result}};
    if (!sel.readability.empty()) {
      out["source_report"] = artist::assess(text, lang, sel.readability, wb_->assess_options);
      out["simplified_report"] =
          artist::assess(result.simplified, lang, sel.readability, wb_->assess_options);
    }
    out["findings"] = diagnostics ? json(run_diagnostics(text, result.simplified, wb_->freq,
                                                         wb_->config.diagnostics))
                                  : json::array();
    if (sel.bleu || sel.sari) {
      json scores = json::object();
      if (sel.bleu) scores["bleu"] = bleu(result.simplified, references);
      if (sel.sari) scores["sari"] = sari(text, result.simplified, references);
      out["evaluation"] = std::move(scores);
    }
    return Response{200, std::move(out)};
  });
}

Response Service::assess(const json& body) const {
  return guarded([&] { return Response{200, json(assess_request(*wb_, body))}; });
}

Response Service::evaluate(const json& body) const {
  return guarded([&] { return Response{200, json(evaluate_request(*wb_, body))}; });
}

Response Service::post_rating(const json& body) {
  return guarded([&] {
    const auto record = body.get<RatingRecord>();
    std::lock_guard lock(ratings_mutex_);
    if (wb_->config.results_path) append_rating(wb_->config.results_path->string(), record);
    ratings_.push_back(record);
    return Response{201, json{{"id", ratings_.size()}}};
  });
}

Response Service::get_ratings(const std::optional<std::string>& topic_id,
                              const std::optional<std::string>& backend_id) const {
  return guarded([&] {
    std::vector<RatingRecord> selected;
    {
      std::lock_guard lock(ratings_mutex_);
      for (const auto& r : ratings_)
        if ((!topic_id || r.topic_id == *topic_id) &&
            (!backend_id || r.backend_id == *backend_id))
          selected.push_back(r);
    }
    if (selected.empty())
      throw Error(ErrorCode::empty_scope, "no ratings for the requested scope");
    json groups = json::array();
    for (const auto& [scope, means] : aggregate_ratings(selected)) {
      json g = means;
      g["topic_id"] = scope.topic_id;
      g["backend_id"] = scope.backend_id;
      groups.push_back(std::move(g));
    }
    return Response{200, json{{"aggregates", std::move(groups)}}};
  });
}

Response Service::health() const {
  return guarded([&] {
    json backends = json::array();
    for (const auto& b : wb_->config.backends)
      backends.push_back({{"backend_id", b.backend_id},
                          {"reachable", probe_backend(b, wb_->resources(), probe_timeout)}});
    return Response{200, json{{"status", "ok"}, {"backends", std::move(backends)}}};
  });
}

Response Service::corpora() const {
  return guarded([&] {
    json list = json::array();
    for (const auto& [id, corpus] : wb_->corpora)
      list.push_back({{"corpus_id", id},
                      {"topics", corpus.topics.size()},
                      {"pairs", corpus.pairs.size()}});
    return Response{200, json{{"corpora", std::move(list)}}};
  });
}

// ---------------------------------------------------------------- transport

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {}
};

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(dump_json(r.body), "application/json");
}

template <typename Handler>
httplib::Server::Handler json_route(Handler h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
      reply(res, error_response({ApiErrorCode::bad_request, "malformed JSON body",
                                 std::nullopt}));
      return;
    }
    reply(res, h(body));
  };
}

std::optional<std::string> query(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

}  // namespace

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& s = impl_->server;
  Service& svc = impl_->service;
  s.Post("/v1/simplify", json_route([&svc](const json& b) { return svc.simplify(b); }));
  s.Post("/v1/assess", json_route([&svc](const json& b) { return svc.assess(b); }));
  s.Post("/v1/evaluate", json_route([&svc](const json& b) { return svc.evaluate(b); }));
  s.Post("/v1/ratings", json_route([&svc](const json& b) { return svc.post_rating(b); }));
  s.Get("/v1/ratings", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.get_ratings(query(req, "topic_id"), query(req, "backend_id")));
  });
  s.Get("/v1/health", [&svc](const httplib::Request&, httplib::Response& res) {
    reply(res, svc.health());
  });
  s.Get("/v1/corpora", [&svc](const httplib::Request&, httplib::Response& res) {
    reply(res, svc.corpora());
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const auto code = res.status == 404 ? ApiErrorCode::not_found
                      : res.status >= 500 ? ApiErrorCode::internal
                                          : ApiErrorCode::bad_request;
    res.set_content(dump_json(to_json_body({code, "no such route", std::nullopt})),
                    "application/json");
  });
  s.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        reply(res, error_response({ApiErrorCode::internal, "unhandled error", std::nullopt}));
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& s = impl_->server;
  if (port == 0) {
    const int bound = s.bind_to_any_port(host);
    if (bound <= 0) throw Error(ErrorCode::io_error, "cannot bind " + host);
    return bound;
  }
  if (!s.bind_to_port(host, port))
    throw Error(ErrorCode::io_error, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace artist
