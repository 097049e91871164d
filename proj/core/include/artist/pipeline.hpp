#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artist/segmentation.hpp"

namespace artist {

using ModelParams = std::map<std::string, std::string>;

enum class BackendKind { external_model, round_trip, lexical, mock };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend_kind(std::string_view s);

struct TranslatorUrls {
  std::string forward;
  std::string backward;
};

struct LexicalParams {
  double freq_threshold = 1e-5;
  int max_substitutions_per_sentence = 2;
};

struct BackendConfig {
  std::string backend_id;
  BackendKind kind = BackendKind::mock;
  std::optional<std::string> endpoint_url;
  int timeout_ms = 30000;
  ModelParams model_params;
  std::optional<TranslatorUrls> translator_urls;
  std::optional<LexicalParams> lexical_params;
  // Simplifier used between the two translations of a round_trip backend.
  std::shared_ptr<const BackendConfig> inner;
  Language source_language = Language::nl;
  Language pivot_language = Language::en;

  // Throws Error(invalid_argument) on a kind/field mismatch.
  void validate() const;
};

struct StageOutput {
  std::string stage;
  std::string text;

  bool operator==(const StageOutput&) const = default;
};

struct Substitution {
  std::string original;
  std::string replacement;
  Span source_span;

  bool operator==(const Substitution&) const = default;
};

// A rare word the lexical backend could not replace.
struct ConsideredWord {
  std::string word;
  Span source_span;

  bool operator==(const ConsideredWord&) const = default;
};

struct SimplificationResult {
  std::string source;
  std::string simplified;
  std::string backend_id;
  std::vector<StageOutput> stage_outputs;  // round_trip only
  std::vector<Substitution> substitutions;  // lexical only
  std::vector<ConsideredWord> considered;   // lexical only
  std::int64_t latency_ms = 0;
};

inline constexpr std::string_view kStageForward = "forward_translate";
inline constexpr std::string_view kStageSimplify = "simplify";
inline constexpr std::string_view kStageBackward = "back_translate";

// Client interfaces. Implementations hold immutable configuration only and
// are safe to share between threads.
class Simplifier {
 public:
  virtual ~Simplifier() = default;
  virtual std::string simplify(const std::string& text) const = 0;
};

class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string translate(const std::string& text, Language from,
                                Language to) const = 0;
};

class ClientFactory {
 public:
  virtual ~ClientFactory() = default;
  virtual std::unique_ptr<Simplifier> model(const std::string& url,
                                            std::chrono::milliseconds timeout,
                                            const ModelParams& params) const = 0;
  virtual std::unique_ptr<Translator> translator(
      const std::string& url, std::chrono::milliseconds timeout) const = 0;
  // True when something answers at url within the timeout.
  virtual bool probe(const std::string& url,
                     std::chrono::milliseconds timeout) const = 0;
};

// HTTP/JSON clients.
const ClientFactory& http_client_factory();

// POST {"text", "params"} -> {"simplified"}. Throws Error with
// backend_unavailable, backend_timeout or backend_bad_response.
std::string call_external_model(const std::string& endpoint, const std::string& text,
                                const ModelParams& params,
                                std::chrono::milliseconds timeout);

// POST {"text", "source_lang", "target_lang"} -> {"translation"}.
std::string call_translator(const std::string& endpoint, const std::string& text,
                            Language from, Language to,
                            std::chrono::milliseconds timeout);

class SynonymLexicon {
 public:
  SynonymLexicon() = default;
  // Throws Error(invalid_argument) on self-synonyms or multi-word synonyms.
  explicit SynonymLexicon(std::map<std::string, std::vector<std::string>> entries);

  // "word<TAB>syn1,syn2" lines; '#' comments. Throws ParseError.
  static SynonymLexicon load(std::istream& in);
  static SynonymLexicon load_file(const std::string& path);

  const std::vector<std::string>* find(std::string_view word) const;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

// Deterministic in-process simplifier. Modes (model_params["mode"]):
// identity, uppercase, drop_every_second_word. With model_params["fail_on"]
// set, texts containing that substring fail with backend_unavailable.
class MockSimplifier : public Simplifier {
 public:
  explicit MockSimplifier(ModelParams params);
  std::string simplify(const std::string& text) const override;

 private:
  std::string mode_;
  std::string fail_on_;
};

// Keeps whitespace-separated chunks 0, 2, 4, ... joined by single spaces.
std::string drop_every_second_word(std::string_view text);

SimplificationResult round_trip(const std::string& text, const Translator& forward,
                                const Simplifier& simplifier,
                                const Translator& backward,
                                Language source = Language::nl,
                                Language pivot = Language::en);

SimplificationResult lexical_simplify(const std::string& text,
                                      const FrequencyList& freq,
                                      const SynonymLexicon& lexicon,
                                      const LexicalParams& params = {});

struct BackendResources {
  const FrequencyList* freq = nullptr;
  const SynonymLexicon* lexicon = nullptr;
  const ClientFactory* clients = &http_client_factory();
};

// Dispatches on cfg.kind. Throws Error(empty_text), backend errors, or
// StageFailed for round_trip chains.
SimplificationResult simplify(const std::string& text, const BackendConfig& cfg,
                              const BackendResources& resources = {});

// Liveness of a backend and, for round_trip, of every stage.
bool probe_backend(const BackendConfig& cfg, const BackendResources& resources,
                   std::chrono::milliseconds timeout);

}  // namespace artist
