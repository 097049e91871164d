#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "artist/config.hpp"
#include "artist/error.hpp"
#include "artist/evalmetrics.hpp"

namespace artist {

enum class ApiErrorCode { bad_request, backend_unavailable, backend_timeout, not_found, internal };

std::string_view to_string(ApiErrorCode code);
int http_status(ApiErrorCode code);

struct ApiError {
  ApiErrorCode code = ApiErrorCode::internal;
  std::string message;
  std::optional<nlohmann::json> detail;
};

// Library errors onto the API error space. StageFailed maps by its
// underlying code and carries {"stage"} in detail.
ApiError to_api_error(const Error& e);

nlohmann::json to_json_body(const ApiError& e);  // {"error": {"code","message"[,"detail"]}}

struct Response {
  int status = 200;
  nlohmann::json body;
};

// Request handlers, independent of the HTTP transport. Every handler
// catches library errors and answers with the mapped ApiError body.
class Service {
 public:
  explicit Service(std::shared_ptr<const Workbench> workbench);

  Response simplify(const nlohmann::json& body) const;
  Response assess(const nlohmann::json& body) const;
  Response evaluate(const nlohmann::json& body) const;
  Response post_rating(const nlohmann::json& body);
  Response get_ratings(const std::optional<std::string>& topic_id,
                       const std::optional<std::string>& backend_id) const;
  Response health() const;
  Response corpora() const;

  const Workbench& workbench() const { return *wb_; }

  std::chrono::milliseconds probe_timeout{1000};

 private:
  std::shared_ptr<const Workbench> wb_;
  mutable std::mutex ratings_mutex_;
  std::vector<RatingRecord> ratings_;
};

// Uniform request parsing shared by the handlers and the CLI, so both
// produce the same result objects for the same inputs.
ReadabilityReport assess_request(const Workbench& wb, const nlohmann::json& body);
CorpusEvalTable evaluate_request(const Workbench& wb, const nlohmann::json& body,
                                 unsigned jobs = 1);

// Binds /v1 routes onto an HTTP listener.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws
  // Error(io_error) when binding fails.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace artist
