#include "artist/config.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <thread>

#include "artist/error.hpp"
#include "artist/serialization.hpp"

namespace artist {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "config: " + what);
}

std::pair<std::string, int> parse_listen(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size())
    bad("listen address must be host:port, got '" + addr + "'");
  int port = 0;
  try {
    port = std::stoi(addr.substr(colon + 1));
  } catch (const std::exception&) {
    bad("invalid port in '" + addr + "'");
  }
  if (port < 0 || port > 65535) bad("port out of range in '" + addr + "'");
  return {addr.substr(0, colon), port};
}

std::optional<fs::path> optional_path(const json& j, const char* name,
                                      const fs::path& base) {
  if (!j.contains(name)) return std::nullopt;
  if (!j[name].is_string()) bad(std::string(name) + " must be a path string");
  const fs::path p = j[name].get<std::string>();
  return p.is_absolute() ? p : base / p;
}

std::set<std::string> load_word_set(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    words.insert(to_lower(line));
  }
  return words;
}

}  // namespace

ServerConfig ServerConfig::from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) bad("top level must be an object");
  ServerConfig cfg;
  if (j.contains("listen")) {
    if (!j["listen"].is_string()) bad("listen must be a string");
    std::tie(cfg.listen_host, cfg.listen_port) =
        parse_listen(j["listen"].get<std::string>());
  }
  if (j.contains("language")) {
    const auto lang =
        j["language"].is_string() ? parse_language(j["language"].get<std::string>())
                                  : std::nullopt;
    if (!lang) bad("language must be \"nl\" or \"en\"");
    cfg.language = *lang;
  }
  if (j.contains("resources")) {
    const json& r = j["resources"];
    if (!r.is_object()) bad("resources must be an object");
    cfg.frequency_list = optional_path(r, "frequency_list", base_dir);
    cfg.lexicon = optional_path(r, "lexicon", base_dir);
    cfg.familiar_words = optional_path(r, "familiar_words", base_dir);
    cfg.avi_table = optional_path(r, "avi_table", base_dir);
    cfg.abbreviations = optional_path(r, "abbreviations", base_dir);
  }
  if (j.contains("corpora")) {
    const json& c = j["corpora"];
    if (!c.is_object()) bad("corpora must be an object of id -> path");
    for (const auto& item : c.items()) {
      if (!item.value().is_string()) bad("corpus path must be a string");
      const fs::path p = item.value().get<std::string>();
      cfg.corpora[item.key()] = p.is_absolute() ? p : base_dir / p;
    }
  }
  if (j.contains("backends")) {
    const json& b = j["backends"];
    if (!b.is_array()) bad("backends must be a list");
    for (const auto& entry : b) {
      auto backend = entry.get<BackendConfig>();
      if (cfg.find_backend(backend.backend_id))
        bad("duplicate backend_id " + backend.backend_id);
      cfg.backends.push_back(std::move(backend));
    }
  }
  if (j.contains("diagnostics")) cfg.diagnostics = j["diagnostics"].get<DiagnosticsConfig>();
  cfg.results_path = optional_path(j, "results_path", base_dir);
  return cfg;
}

ServerConfig ServerConfig::load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) bad(path.string() + " is not valid JSON");
  return from_json(j, path.parent_path());
}

ServerConfig ServerConfig::defaults() {
  ServerConfig cfg;
  BackendConfig mock;
  mock.backend_id = "mock";
  mock.kind = BackendKind::mock;
  cfg.backends.push_back(std::move(mock));
  return cfg;
}

std::string backend_env_var(std::string_view backend_id) {
  std::string name = "ARTIST_BACKEND_";
  for (char c : backend_id)
    name.push_back(std::isalnum(static_cast<unsigned char>(c))
                       ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                       : '_');
  name += "_URL";
  return name;
}

void ServerConfig::apply_env(const std::function<const char*(const char*)>& getenv) {
  if (const char* addr = getenv("ARTIST_LISTEN_ADDR"); addr && *addr)
    std::tie(listen_host, listen_port) = parse_listen(addr);
  for (auto& b : backends) {
    const std::string var = backend_env_var(b.backend_id);
    if (const char* url = getenv(var.c_str()); url && *url) b.endpoint_url = url;
  }
}

const BackendConfig* ServerConfig::find_backend(std::string_view id) const {
  const auto it = std::find_if(backends.begin(), backends.end(),
                               [&](const BackendConfig& b) { return b.backend_id == id; });
  return it == backends.end() ? nullptr : &*it;
}

std::shared_ptr<const Workbench> Workbench::load(ServerConfig config,
                                                 const ClientFactory& clients) {
  auto wb = std::make_shared<Workbench>();
  if (config.frequency_list)
    wb->freq = FrequencyList::load_file(config.frequency_list->string());
  if (config.lexicon) wb->lexicon = SynonymLexicon::load_file(config.lexicon->string());
  if (config.familiar_words)
    wb->assess_options.familiar = load_word_set(*config.familiar_words);
  else
    wb->assess_options.familiar = wb->freq.top(1000);
  if (config.avi_table)
    wb->assess_options.avi_table = AviTable::load_file(config.avi_table->string());
  if (config.abbreviations) {
    std::ifstream in(*config.abbreviations);
    if (!in)
      throw Error(ErrorCode::io_error, "cannot open " + config.abbreviations->string());
    wb->assess_options.abbreviations = AbbreviationList::load(in);
  }
  for (const auto& [id, path] : config.corpora)
    wb->corpora.emplace(id, load_corpus_file(path.string()));
  for (const auto& b : config.backends) b.validate();
  wb->clients = &clients;
  wb->config = std::move(config);
  return wb;
}

CorpusEvalTable evaluate_corpus(const Corpus& corpus, const BackendConfig& backend,
                                const BackendResources& resources, Level complex_level,
                                Level simple_level, EvalMetric metric,
                                AggregationMode mode, std::size_t top_k,
                                unsigned jobs) {
  const auto pairs = get_pairs(corpus, complex_level, simple_level);

  struct Outcome {
    std::string candidate;
    bool failed = false;
  };
  std::vector<Outcome> outcomes(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        outcomes[i].candidate = simplify(pairs[i].complex_text, backend, resources).simplified;
      } catch (const Error&) {
        outcomes[i].failed = true;
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::set<std::string> failed;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (outcomes[i].failed) failed.insert(pairs[i].topic_id);

  std::vector<EvalSegment> segments;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (failed.count(pairs[i].topic_id)) continue;
    segments.push_back({pairs[i].topic_id, pairs[i].complex_text, outcomes[i].candidate,
                        {pairs[i].simple_text}});
  }

  CorpusEvalTable table;
  if (!segments.empty()) {
    table = metric == EvalMetric::bleu
                ? corpus_bleu_table(segments, backend.backend_id, BleuOptions{}, top_k, mode)
                : corpus_sari_table(segments, backend.backend_id, 4, top_k);
  } else if (top_k < 1) {
    throw Error(ErrorCode::invalid_argument, "top_k must be >= 1");
  }
  failed.insert(table.failed.begin(), table.failed.end());
  table.failed.assign(failed.begin(), failed.end());
  return table;
}

}  // namespace artist
