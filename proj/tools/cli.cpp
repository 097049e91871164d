#include "cli.hpp"

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "artist/config.hpp"
#include "artist/error.hpp"
#include "artist/serialization.hpp"
#include "artist/service.hpp"

namespace artist::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ServerConfig load_config(const std::string& path) {
  ServerConfig cfg = path.empty() ? ServerConfig::defaults() : ServerConfig::load_file(path);
  cfg.apply_env([](const char* name) { return std::getenv(name); });
  return cfg;
}

std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

int exit_code(const Error& e) {
  return is_backend_error(e.code()) ? kBackendError : kDataError;
}

// ---------------------------------------------------------------- assess

struct AssessArgs {
  std::string lang = "nl";
  std::string metrics;
  std::string format = "tsv";
  std::string config;
  std::string file;
};

int cmd_assess(const AssessArgs& a, std::ostream& out, std::ostream& err) {
  json metrics = json::array();
  std::vector<Metric> selected;
  for (const auto& name : split_csv(a.metrics)) {
    const auto m = parse_metric(name);
    if (!m) throw UsageError("unknown metric '" + name + "'");
    selected.push_back(*m);
    metrics.push_back(name);
  }
  if (!a.metrics.empty() && selected.empty()) throw UsageError("--metrics is empty");
  if (!parse_language(a.lang)) throw UsageError("unknown language '" + a.lang + "'");

  const auto wb = Workbench::load(load_config(a.config));
  json body = {{"text", read_file(a.file)}, {"language", a.lang}};
  if (!selected.empty()) body["metrics"] = metrics;
  const ReadabilityReport report = assess_request(*wb, body);

  if (a.format == "json") {
    out << dump_json(json(report)) << '\n';
    return kOk;
  }
  out << "metric\tscore\n";
  const auto& order = selected.empty() ? all_metrics() : selected;
  for (Metric m : order) {
    const std::string id(to_string(m));
    out << id << '\t' << format_score(report.text_scores.at(id)) << '\n';
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  return kOk;
}

// ---------------------------------------------------------------- simplify

struct SimplifyArgs {
  std::string backend;
  std::string config;
  bool diagnostics = false;
  std::string file;
};

int cmd_simplify(const SimplifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto wb = Workbench::load(load_config(a.config));
  const BackendConfig* backend = wb->config.find_backend(a.backend);
  if (!backend) throw UsageError("unknown backend '" + a.backend + "'");
  const std::string text = read_file(a.file);
  const auto result = simplify(text, *backend, wb->resources());
  out << result.simplified;
  if (a.diagnostics)
    err << dump_json(json(run_diagnostics(text, result.simplified, wb->freq,
                                          wb->config.diagnostics)))
        << '\n';
  return kOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string corpus;
  std::string backend;
  std::string metric = "bleu";
  std::string mode = "pooled";
  std::size_t top = 5;
  std::string config;
  std::string format = "tsv";
  std::string complex_level = "upper_secondary";
  std::string simple_level = "primary";
  unsigned jobs = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  if (!parse_eval_metric(a.metric)) throw UsageError("unknown metric '" + a.metric + "'");
  if (!parse_aggregation_mode(a.mode)) throw UsageError("unknown mode '" + a.mode + "'");
  if (!parse_level(a.complex_level) || !parse_level(a.simple_level))
    throw UsageError("unknown level");
  if (a.top < 1) throw UsageError("--top must be at least 1");

  ServerConfig cfg = load_config(a.config);
  if (!cfg.find_backend(a.backend)) throw UsageError("unknown backend '" + a.backend + "'");
  const std::string corpus_id = "cli";
  cfg.corpora.clear();
  cfg.corpora[corpus_id] = a.corpus;
  const auto wb = Workbench::load(std::move(cfg));

  const json body = {{"corpus_id", corpus_id},         {"backend_id", a.backend},
                     {"complex_level", a.complex_level}, {"simple_level", a.simple_level},
                     {"metric", a.metric},               {"mode", a.mode},
                     {"top_k", a.top}};
  const CorpusEvalTable table = evaluate_request(*wb, body, std::max(1u, a.jobs));
  if (a.format == "json") {
    out << dump_json(json(table)) << '\n';
  } else {
    out << render_table_tsv(table.rows);
  }
  return kOk;
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
  std::string config;
  std::string listen;
};

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  ServerConfig cfg = load_config(a.config);
  if (!a.listen.empty()) {
    const auto colon = a.listen.rfind(':');
    if (colon == std::string::npos) throw UsageError("--listen must be host:port");
    cfg.listen_host = a.listen.substr(0, colon);
    try {
      cfg.listen_port = std::stoi(a.listen.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--listen must be host:port");
    }
  }
  const std::string host = cfg.listen_host;
  const int port = cfg.listen_port;
  Service service(Workbench::load(std::move(cfg)));
  HttpServer server(service);
  const int bound = server.bind(host, port);
  out << "listening on " << host << ':' << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  err << "stopped\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dutch text simplification workbench", "artist"};
  app.require_subcommand(1);

  AssessArgs assess_args;
  auto* assess = app.add_subcommand("assess", "Readability scores for a text file");
  assess->add_option("--lang", assess_args.lang, "nl or en")->capture_default_str();
  assess->add_option("--metrics", assess_args.metrics, "comma-separated metric ids");
  assess->add_option("--format", assess_args.format)
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  assess->add_option("--config", assess_args.config, "config file");
  assess->add_option("file", assess_args.file)->required();

  SimplifyArgs simplify_args;
  auto* simplify_cmd = app.add_subcommand("simplify", "Simplify a text file");
  simplify_cmd->add_option("--backend", simplify_args.backend)->required();
  simplify_cmd->add_option("--config", simplify_args.config, "config file");
  simplify_cmd->add_flag("--diagnostics", simplify_args.diagnostics,
                         "print findings as JSON on stderr");
  simplify_cmd->add_option("file", simplify_args.file)->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Rank corpus topics by BLEU or SARI");
  eval->add_option("--corpus", eval_args.corpus, "corpus JSONL")->required();
  eval->add_option("--backend", eval_args.backend)->required();
  eval->add_option("--metric", eval_args.metric)->capture_default_str();
  eval->add_option("--mode", eval_args.mode)->capture_default_str();
  eval->add_option("--top", eval_args.top)->capture_default_str();
  eval->add_option("--config", eval_args.config, "config file");
  eval->add_option("--format", eval_args.format)
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  eval->add_option("--complex-level", eval_args.complex_level)->capture_default_str();
  eval->add_option("--simple-level", eval_args.simple_level)->capture_default_str();
  eval->add_option("--jobs", eval_args.jobs)->capture_default_str();

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", serve_args.config, "config file");
  serve->add_option("--listen", serve_args.listen, "host:port");

  std::vector<const char*> argv{"artist"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*assess) return cmd_assess(assess_args, out, err);
    if (*simplify_cmd) return cmd_simplify(simplify_args, out, err);
    if (*eval) return cmd_eval(eval_args, out, err);
    return cmd_serve(serve_args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const StageFailed& e) {
    err << "error [" << to_string(e.underlying()) << ", stage " << e.stage()
        << "]: " << e.what() << '\n';
    return kBackendError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace artist::cli
