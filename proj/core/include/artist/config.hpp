#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "artist/corpus.hpp"
#include "artist/diagnostics.hpp"
#include "artist/pipeline.hpp"
#include "artist/readability.hpp"

namespace artist {

// Declarative configuration shared by `artist serve` and the batch CLI.
// JSON document; relative paths resolve against the config file's directory.
//
//   {
//     "listen": "127.0.0.1:8080",
//     "language": "nl",
//     "resources": {"frequency_list": "...", "lexicon": "...",
//                   "familiar_words": "...", "avi_table": "...",
//                   "abbreviations": "..."},
//     "corpora": {"cvn": "corpus.jsonl"},
//     "backends": [{"backend_id": "dutch_t5", "kind": "external_model",
//                   "endpoint_url": "http://...", "timeout_ms": 30000}],
//     "diagnostics": {"max_sentence_words": 15, ...},
//     "results_path": "results.jsonl"
//   }
struct ServerConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  Language language = Language::nl;
  std::optional<std::filesystem::path> frequency_list;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> familiar_words;
  std::optional<std::filesystem::path> avi_table;
  std::optional<std::filesystem::path> abbreviations;
  std::map<std::string, std::filesystem::path> corpora;
  std::vector<BackendConfig> backends;
  DiagnosticsConfig diagnostics;
  std::optional<std::filesystem::path> results_path;

  // Throws Error(invalid_argument) / Error(io_error).
  static ServerConfig from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir);
  static ServerConfig load_file(const std::filesystem::path& path);

  // Used when no config file is given: a single identity "mock" backend.
  static ServerConfig defaults();

  // ARTIST_LISTEN_ADDR=host:port and ARTIST_BACKEND_<ID>_URL, where <ID> is
  // the backend id uppercased with non-alphanumerics mapped to '_'.
  void apply_env(const std::function<const char*(const char*)>& getenv);

  const BackendConfig* find_backend(std::string_view id) const;
};

std::string backend_env_var(std::string_view backend_id);

// Immutable engine state built from a config: loaded resources, corpora
// and the backend registry. Shared read-only across requests.
struct Workbench {
  ServerConfig config;
  FrequencyList freq;
  SynonymLexicon lexicon;
  AssessOptions assess_options;
  std::map<std::string, Corpus> corpora;
  const ClientFactory* clients = &http_client_factory();

  static std::shared_ptr<const Workbench> load(
      ServerConfig config, const ClientFactory& clients = http_client_factory());

  BackendResources resources() const { return {&freq, &lexicon, clients}; }
};

// Simplifies every aligned pair of the level combination with the backend
// and scores the outputs against the simple side. Topics whose backend
// calls fail are listed in `failed` and left out of the ranking.
CorpusEvalTable evaluate_corpus(const Corpus& corpus, const BackendConfig& backend,
                                const BackendResources& resources, Level complex_level,
                                Level simple_level, EvalMetric metric,
                                AggregationMode mode, std::size_t top_k,
                                unsigned jobs = 1);

}  // namespace artist
