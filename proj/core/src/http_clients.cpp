#include <httplib.h>

#include <nlohmann/json.hpp>

#include "artist/error.hpp"
#include "artist/pipeline.hpp"
#include "http_util.hpp"

namespace artist {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

httplib::Client make_client(const Endpoint& ep, std::chrono::milliseconds timeout) {
  httplib::Client client(ep.base);
  const auto sec = timeout.count() / 1000;
  const auto usec = (timeout.count() % 1000) * 1000;
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
  client.set_keep_alive(false);
  return client;
}

// Posts a JSON body and returns the parsed JSON reply, mapping transport
// failures onto typed backend errors. The deadline is checked against the
// caller's clock as well as the socket timeouts.
json post_json(const std::string& url, const json& body,
               std::chrono::milliseconds timeout) {
  const Endpoint ep = parse_endpoint(url);
  auto client = make_client(ep, timeout);
  const auto start = Clock::now();
  auto res = client.Post(ep.path, body.dump(), "application/json");
  const auto elapsed = Clock::now() - start;

  if (!res) {
    const auto err = res.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && elapsed >= timeout);
    if (timed_out)
      throw Error(ErrorCode::backend_timeout,
                  url + ": no response within " + std::to_string(timeout.count()) +
                      " ms");
    throw Error(ErrorCode::backend_unavailable,
                url + ": " + httplib::to_string(err));
  }
  if (elapsed > timeout)
    throw Error(ErrorCode::backend_timeout,
                url + ": response arrived after the " +
                    std::to_string(timeout.count()) + " ms deadline");
  if (res->status >= 500)
    throw Error(ErrorCode::backend_unavailable,
                url + ": HTTP " + std::to_string(res->status));
  if (res->status < 200 || res->status >= 300)
    throw Error(ErrorCode::backend_bad_response,
                url + ": HTTP " + std::to_string(res->status));

  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object())
    throw Error(ErrorCode::backend_bad_response, url + ": reply is not a JSON object");
  return reply;
}

std::string required_string(const json& reply, const char* field,
                            const std::string& url) {
  const auto it = reply.find(field);
  if (it == reply.end() || !it->is_string() || it->get<std::string>().empty())
    throw Error(ErrorCode::backend_bad_response,
                url + ": reply lacks a non-empty \"" + field + "\"");
  return it->get<std::string>();
}

class HttpModelClient : public Simplifier {
 public:
  HttpModelClient(std::string url, std::chrono::milliseconds timeout,
                  ModelParams params)
      : url_(std::move(url)), timeout_(timeout), params_(std::move(params)) {}

  std::string simplify(const std::string& text) const override {
    return call_external_model(url_, text, params_, timeout_);
  }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
  ModelParams params_;
};

class HttpTranslatorClient : public Translator {
 public:
  HttpTranslatorClient(std::string url, std::chrono::milliseconds timeout)
      : url_(std::move(url)), timeout_(timeout) {}

  std::string translate(const std::string& text, Language from,
                        Language to) const override {
    return call_translator(url_, text, from, to, timeout_);
  }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

class HttpClientFactory : public ClientFactory {
 public:
  std::unique_ptr<Simplifier> model(const std::string& url,
                                    std::chrono::milliseconds timeout,
                                    const ModelParams& params) const override {
    return std::make_unique<HttpModelClient>(url, timeout, params);
  }

  std::unique_ptr<Translator> translator(
      const std::string& url, std::chrono::milliseconds timeout) const override {
    return std::make_unique<HttpTranslatorClient>(url, timeout);
  }

  bool probe(const std::string& url,
             std::chrono::milliseconds timeout) const override {
    try {
      const Endpoint ep = parse_endpoint(url);
      auto client = make_client(ep, timeout);
      return static_cast<bool>(client.Get(ep.path));  // any HTTP answer counts
    } catch (const Error&) {
      return false;
    }
  }
};

}  // namespace

std::string call_external_model(const std::string& endpoint, const std::string& text,
                                const ModelParams& params,
                                std::chrono::milliseconds timeout) {
  json body = {{"text", text}, {"params", json::object()}};
  for (const auto& [k, v] : params) body["params"][k] = v;
  return required_string(post_json(endpoint, body, timeout), "simplified", endpoint);
}

std::string call_translator(const std::string& endpoint, const std::string& text,
                            Language from, Language to,
                            std::chrono::milliseconds timeout) {
  const json body = {{"text", text},
                     {"source_lang", std::string(to_string(from))},
                     {"target_lang", std::string(to_string(to))}};
  return required_string(post_json(endpoint, body, timeout), "translation", endpoint);
}

const ClientFactory& http_client_factory() {
  static const HttpClientFactory factory;
  return factory;
}

}  // namespace artist
