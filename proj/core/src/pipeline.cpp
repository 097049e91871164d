#include "artist/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "artist/error.hpp"
#include "unicode.hpp"

namespace artist {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

void require_text(std::string_view text) {
  if (is_blank(text)) throw Error(ErrorCode::empty_text, "text is empty");
}

bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Adapts lexical_simplify to the Simplifier interface (round_trip inner).
class LexicalSimplifier : public Simplifier {
 public:
  LexicalSimplifier(const FrequencyList& freq, const SynonymLexicon& lexicon,
                    LexicalParams params)
      : freq_(freq), lexicon_(lexicon), params_(params) {}

  std::string simplify(const std::string& text) const override {
    return lexical_simplify(text, freq_, lexicon_, params_).simplified;
  }

 private:
  const FrequencyList& freq_;
  const SynonymLexicon& lexicon_;
  LexicalParams params_;
};

void require_lexical(const BackendResources& r) {
  if (!r.freq || r.freq->empty() || !r.lexicon || r.lexicon->empty())
    throw Error(ErrorCode::invalid_argument,
                "lexical backend needs a frequency list and a synonym lexicon");
}

std::unique_ptr<Simplifier> make_simplifier(const BackendConfig& cfg,
                                            const BackendResources& resources) {
  switch (cfg.kind) {
    case BackendKind::mock:
      return std::make_unique<MockSimplifier>(cfg.model_params);
    case BackendKind::external_model:
      return resources.clients->model(*cfg.endpoint_url,
                                      std::chrono::milliseconds(cfg.timeout_ms),
                                      cfg.model_params);
    case BackendKind::lexical:
      require_lexical(resources);
      return std::make_unique<LexicalSimplifier>(
          *resources.freq, *resources.lexicon,
          cfg.lexical_params.value_or(LexicalParams{}));
    case BackendKind::round_trip:
      break;
  }
  throw Error(ErrorCode::invalid_argument,
              "round_trip backends cannot be nested as a simplifier");
}

}  // namespace

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::external_model: return "external_model";
    case BackendKind::round_trip: return "round_trip";
    case BackendKind::lexical: return "lexical";
    case BackendKind::mock: return "mock";
  }
  return "mock";
}

std::optional<BackendKind> parse_backend_kind(std::string_view s) {
  if (s == "external_model") return BackendKind::external_model;
  if (s == "round_trip") return BackendKind::round_trip;
  if (s == "lexical") return BackendKind::lexical;
  if (s == "mock") return BackendKind::mock;
  return std::nullopt;
}

void BackendConfig::validate() const {
  if (backend_id.empty())
    throw Error(ErrorCode::invalid_argument, "backend_id must not be empty");
  if (timeout_ms <= 0)
    throw Error(ErrorCode::invalid_argument,
                backend_id + ": timeout_ms must be positive");
  switch (kind) {
    case BackendKind::external_model:
      if (!endpoint_url || endpoint_url->empty())
        throw Error(ErrorCode::invalid_argument,
                    backend_id + ": external_model requires endpoint_url");
      break;
    case BackendKind::round_trip:
      if (!translator_urls || translator_urls->forward.empty() ||
          translator_urls->backward.empty())
        throw Error(ErrorCode::invalid_argument,
                    backend_id + ": round_trip requires both translator URLs");
      if (!inner)
        throw Error(ErrorCode::invalid_argument,
                    backend_id + ": round_trip requires an inner simplifier");
      if (inner->kind == BackendKind::round_trip)
        throw Error(ErrorCode::invalid_argument,
                    backend_id + ": round_trip inner simplifier cannot be round_trip");
      inner->validate();
      break;
    case BackendKind::lexical:
      if (lexical_params && (!(lexical_params->freq_threshold > 0) ||
                             lexical_params->max_substitutions_per_sentence < 0))
        throw Error(ErrorCode::invalid_argument,
                    backend_id + ": invalid lexical parameters");
      break;
    case BackendKind::mock:
      (void)MockSimplifier{model_params};  // validates the mode
      break;
  }
}

// ---------------------------------------------------------------- lexicon

SynonymLexicon::SynonymLexicon(std::map<std::string, std::vector<std::string>> entries) {
  for (auto& [word, synonyms] : entries) {
    const std::string key = to_lower(word);
    for (const auto& syn : synonyms) {
      if (syn.empty() || has_whitespace(syn))
        throw Error(ErrorCode::invalid_argument,
                    "multi-word synonym '" + syn + "' for '" + word + "'");
      if (to_lower(syn) == key)
        throw Error(ErrorCode::invalid_argument, "'" + word + "' maps to itself");
    }
    auto& slot = entries_[key];
    slot.insert(slot.end(), synonyms.begin(), synonyms.end());
  }
}

SynonymLexicon SynonymLexicon::load(std::istream& in) {
  std::map<std::string, std::vector<std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError(line_no, "expected 'word<TAB>synonym[,synonym...]'");
    const std::string word = to_lower(line.substr(0, tab));
    if (has_whitespace(word)) throw ParseError(line_no, "headword has whitespace");
    std::vector<std::string> synonyms;
    std::string_view rest = std::string_view(line).substr(tab + 1);
    for (;;) {
      const auto comma = rest.find(',');
      std::string syn = trim(rest.substr(0, comma));
      if (syn.empty()) throw ParseError(line_no, "empty synonym");
      if (has_whitespace(syn))
        throw ParseError(line_no, "multi-word synonym '" + syn + "' rejected");
      if (to_lower(syn) == word)
        throw ParseError(line_no, "'" + word + "' maps to itself");
      synonyms.push_back(std::move(syn));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    auto& slot = entries[word];
    slot.insert(slot.end(), synonyms.begin(), synonyms.end());
  }
  return SynonymLexicon(std::move(entries));
}

SynonymLexicon SynonymLexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return load(in);
}

const std::vector<std::string>* SynonymLexicon::find(std::string_view word) const {
  const auto it = entries_.find(to_lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------- mock

MockSimplifier::MockSimplifier(ModelParams params) {
  const auto mode = params.find("mode");
  mode_ = mode == params.end() ? "identity" : mode->second;
  if (mode_ != "identity" && mode_ != "uppercase" &&
      mode_ != "drop_every_second_word")
    throw Error(ErrorCode::invalid_argument, "unknown mock mode '" + mode_ + "'");
  const auto fail = params.find("fail_on");
  if (fail != params.end()) fail_on_ = fail->second;
}

std::string MockSimplifier::simplify(const std::string& text) const {
  if (!fail_on_.empty() && text.find(fail_on_) != std::string::npos)
    throw Error(ErrorCode::backend_unavailable, "mock backend failure");
  if (mode_ == "uppercase") {
    std::string out;
    for (std::size_t i = 0; i < text.size();) {
      const auto d = unicode::decode(text, i);
      unicode::append_utf8(out, unicode::to_upper(d.cp));
      i += d.length;
    }
    return out;
  }
  if (mode_ == "drop_every_second_word") return drop_every_second_word(text);
  return text;
}

std::string drop_every_second_word(std::string_view text) {
  std::string out;
  std::size_t index = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (index % 2 == 0) {
      if (!out.empty()) out.push_back(' ');
      out.append(text.substr(i, j - i));
    }
    ++index;
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------- chains

SimplificationResult round_trip(const std::string& text, const Translator& forward,
                                const Simplifier& simplifier,
                                const Translator& backward, Language source,
                                Language pivot) {
  require_text(text);
  const auto start = Clock::now();
  SimplificationResult result;
  result.source = text;

  auto run_stage = [&result](std::string_view stage, auto&& fn) {
    std::string out;
    try {
      out = fn();
    } catch (const Error& e) {
      throw StageFailed(std::string(stage), e.code(), e.what());
    } catch (const std::exception& e) {
      throw StageFailed(std::string(stage), ErrorCode::backend_bad_response,
                        e.what());
    }
    if (is_blank(out))
      throw StageFailed(std::string(stage), ErrorCode::backend_bad_response,
                        "stage produced empty text");
    result.stage_outputs.push_back({std::string(stage), out});
    return out;
  };

  const std::string pivot_text =
      run_stage(kStageForward, [&] { return forward.translate(text, source, pivot); });
  const std::string simplified =
      run_stage(kStageSimplify, [&] { return simplifier.simplify(pivot_text); });
  result.simplified = run_stage(
      kStageBackward, [&] { return backward.translate(simplified, pivot, source); });
  result.latency_ms = elapsed_ms(start);
  return result;
}

SimplificationResult lexical_simplify(const std::string& text,
                                      const FrequencyList& freq,
                                      const SynonymLexicon& lexicon,
                                      const LexicalParams& params) {
  require_text(text);
  if (freq.empty() || lexicon.empty())
    throw Error(ErrorCode::invalid_argument,
                "lexical simplification needs a frequency list and a lexicon");
  const auto start = Clock::now();

  SimplificationResult result;
  result.source = text;
  for (const auto& sentence : split_sentences(text, Language::nl)) {
    int used = 0;
    for (const auto& token : sentence.tokens) {
      if (token.kind != TokenKind::word) continue;
      if (freq.relative(token.surface) >= params.freq_threshold) continue;
      const std::uint64_t own = freq.count(token.surface);
      const std::string* best = nullptr;
      std::uint64_t best_count = own;
      if (const auto* synonyms = lexicon.find(token.surface)) {
        for (const auto& syn : *synonyms) {
          const std::uint64_t c = freq.count(syn);
          if (c > best_count) {
            best = &syn;
            best_count = c;
          }
        }
      }
      if (!best) {
        result.considered.push_back({token.surface, token.span});
        continue;
      }
      if (used >= params.max_substitutions_per_sentence) continue;
      std::string replacement = to_lower(*best);
      if (unicode::starts_upper(token.surface))
        replacement = unicode::capitalize_first(replacement);
      result.substitutions.push_back({token.surface, replacement, token.span});
      ++used;
    }
  }

  std::string out;
  std::size_t pos = 0;
  for (const auto& s : result.substitutions) {
    out.append(text, pos, s.source_span.begin - pos);
    out.append(s.replacement);
    pos = s.source_span.end;
  }
  out.append(text, pos, std::string::npos);
  result.simplified = std::move(out);
  result.latency_ms = elapsed_ms(start);
  return result;
}

SimplificationResult simplify(const std::string& text, const BackendConfig& cfg,
                              const BackendResources& resources) {
  require_text(text);
  cfg.validate();
  const auto start = Clock::now();
  SimplificationResult result;

  switch (cfg.kind) {
    case BackendKind::lexical: {
      require_lexical(resources);
      result = lexical_simplify(text, *resources.freq, *resources.lexicon,
                                cfg.lexical_params.value_or(LexicalParams{}));
      break;
    }
    case BackendKind::round_trip: {
      const auto timeout = std::chrono::milliseconds(cfg.timeout_ms);
      const auto forward =
          resources.clients->translator(cfg.translator_urls->forward, timeout);
      const auto backward =
          resources.clients->translator(cfg.translator_urls->backward, timeout);
      const auto inner = make_simplifier(*cfg.inner, resources);
      result = round_trip(text, *forward, *inner, *backward, cfg.source_language,
                          cfg.pivot_language);
      break;
    }
    case BackendKind::external_model:
    case BackendKind::mock: {
      const auto client = make_simplifier(cfg, resources);
      result.source = text;
      result.simplified = client->simplify(text);
      if (is_blank(result.simplified))
        throw Error(ErrorCode::backend_bad_response,
                    cfg.backend_id + ": backend returned empty text");
      break;
    }
  }
  result.backend_id = cfg.backend_id;
  result.latency_ms = elapsed_ms(start);
  return result;
}

bool probe_backend(const BackendConfig& cfg, const BackendResources& resources,
                   std::chrono::milliseconds timeout) {
  switch (cfg.kind) {
    case BackendKind::mock:
      return true;
    case BackendKind::lexical:
      return resources.freq && !resources.freq->empty() && resources.lexicon &&
             !resources.lexicon->empty();
    case BackendKind::external_model:
      return cfg.endpoint_url && resources.clients->probe(*cfg.endpoint_url, timeout);
    case BackendKind::round_trip:
      return cfg.translator_urls && cfg.inner &&
             resources.clients->probe(cfg.translator_urls->forward, timeout) &&
             resources.clients->probe(cfg.translator_urls->backward, timeout) &&
             probe_backend(*cfg.inner, resources, timeout);
  }
  return false;
}

}  // namespace artist
