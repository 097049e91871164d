#include "artist/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "artist/error.hpp"
#include "unicode.hpp"

namespace artist {

namespace {

std::string format_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

std::size_t word_count(std::string_view text) {
  const auto tokens = tokenize(text, Language::nl);
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return t.is_wordlike(); }));
}

std::string normalize_number(std::string_view surface) {
  std::size_t end = 0;
  while (end < surface.size() &&
         ((surface[end] >= '0' && surface[end] <= '9') || surface[end] == '.' ||
          surface[end] == ',')) {
    ++end;
  }
  const std::string_view digits = surface.substr(0, end);  // drops "e", "th"...

  // Thousands separators: every group after a separator has three digits.
  bool grouped = digits.find_first_of(".,") != std::string_view::npos;
  {
    std::size_t pos = 0;
    while (grouped && (pos = digits.find_first_of(".,", pos)) !=
                          std::string_view::npos) {
      std::size_t next = digits.find_first_of(".,", pos + 1);
      if (next == std::string_view::npos) next = digits.size();
      if (next - pos - 1 != 3) grouped = false;
      pos = next;
    }
  }
  std::string out;
  for (char c : digits) {
    if (c == '.' || c == ',') {
      if (!grouped) out.push_back('.');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_year_value(std::string_view v) {
  return v.size() == 4 && v.find('.') == std::string_view::npos &&
         (v[0] == '1' || v[0] == '2');
}

// Years form one class; other numbers are classed by integer digit count.
std::string magnitude_class(const NumberMention& m) {
  if (m.is_year) return "year";
  const auto dot = m.value.find('.');
  return "digits:" + std::to_string(dot == std::string::npos ? m.value.size() : dot);
}

// Mentions of `a` beyond the number of equal values available in `b`.
std::vector<NumberMention> unmatched(const std::vector<NumberMention>& a,
                                     const std::vector<NumberMention>& b) {
  std::map<std::string, std::size_t> available;
  for (const auto& m : b) ++available[m.value];
  std::vector<NumberMention> out;
  for (const auto& m : a) {
    auto& n = available[m.value];
    if (n > 0) {
      --n;
    } else {
      out.push_back(m);
    }
  }
  return out;
}

bool is_capitalized_word(const Token& t) {
  return t.kind == TokenKind::word && unicode::starts_upper(t.surface);
}

std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); i += unicode::decode(s, i).length) ++n;
  return n;
}

bool is_acronym(const Token& t, const DiagnosticsConfig& cfg) {
  if (t.kind != TokenKind::word) return false;
  const std::size_t len = codepoint_count(t.surface);
  if (len < static_cast<std::size_t>(cfg.acronym_min_length) ||
      len > static_cast<std::size_t>(cfg.acronym_max_length))
    return false;
  for (std::size_t i = 0; i < t.surface.size();) {
    const auto d = unicode::decode(t.surface, i);
    if (!unicode::is_upper(d.cp)) return false;
    i += d.length;
  }
  return true;
}

std::string initial_of(const Token& t) {
  std::string out;
  unicode::append_utf8(out, unicode::to_upper(unicode::decode(t.surface, 0).cp));
  return out;
}

// Initials of the capitalized words in tokens [begin, end), lowercase
// connector words skipped.
std::string phrase_initials(const std::vector<Token>& tokens, std::size_t begin,
                            std::size_t end) {
  std::string initials;
  for (std::size_t k = begin; k < end; ++k)
    if (is_capitalized_word(tokens[k]) && tokens[k].kind == TokenKind::word)
      initials += initial_of(tokens[k]);
  return initials;
}

bool expanded_before(const std::vector<Token>& tokens, std::size_t i,
                     const std::string& acronym) {
  std::size_t j = i;
  if (j > 0 && tokens[j - 1].surface == "(") --j;
  // Walk back over the word run preceding the acronym.
  std::size_t begin = j;
  while (begin > 0 && tokens[begin - 1].kind == TokenKind::word) --begin;
  std::string initials;
  std::size_t words = 0;
  for (std::size_t k = j; k > begin; --k) {
    const Token& t = tokens[k - 1];
    if (!is_capitalized_word(t)) continue;
    initials.insert(0, initial_of(t));
    ++words;
    if (initials.size() >= acronym.size()) break;
  }
  return words >= 2 && initials == acronym;
}

bool expanded_after(const std::vector<Token>& tokens, std::size_t i,
                    const std::string& acronym) {
  if (i + 1 >= tokens.size() || tokens[i + 1].surface != "(") return false;
  std::size_t close = i + 2;
  while (close < tokens.size() && tokens[close].surface != ")") ++close;
  if (close >= tokens.size()) return false;
  std::size_t words = 0;
  for (std::size_t k = i + 2; k < close; ++k)
    if (is_capitalized_word(tokens[k])) ++words;
  return words >= 2 && phrase_initials(tokens, i + 2, close) == acronym;
}

std::size_t position_of(const Finding& f) {
  if (f.source_span) return f.source_span->begin;
  if (f.simplified_span) return f.simplified_span->begin;
  return 0;
}

}  // namespace

std::string_view to_string(CheckId id) {
  switch (id) {
    case CheckId::number_mutation: return "number_mutation";
    case CheckId::number_dropped: return "number_dropped";
    case CheckId::entity_dropped: return "entity_dropped";
    case CheckId::acronym_unexpanded: return "acronym_unexpanded";
    case CheckId::sentence_too_long: return "sentence_too_long";
    case CheckId::low_frequency_word: return "low_frequency_word";
    case CheckId::aggressive_compression: return "aggressive_compression";
  }
  return "unknown";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
  }
  return "info";
}

std::optional<CheckId> parse_check_id(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(CheckId::aggressive_compression); ++i) {
    const auto id = static_cast<CheckId>(i);
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

std::optional<Severity> parse_severity(std::string_view s) {
  if (s == "info") return Severity::info;
  if (s == "warning") return Severity::warning;
  if (s == "error") return Severity::error;
  return std::nullopt;
}

bool is_preservation_check(CheckId id) {
  return id == CheckId::number_mutation || id == CheckId::number_dropped ||
         id == CheckId::entity_dropped || id == CheckId::aggressive_compression;
}

void DiagnosticsConfig::validate() const {
  if (min_sentence_words < 1 || max_sentence_words < 1 ||
      min_sentence_words > max_sentence_words)
    throw Error(ErrorCode::invalid_argument,
                "sentence word bounds must satisfy 1 <= min <= max");
  if (!(freq_threshold > 0) || !(compression_ratio_floor > 0))
    throw Error(ErrorCode::invalid_argument, "thresholds must be positive");
  if (acronym_min_length < 2 || acronym_min_length > acronym_max_length)
    throw Error(ErrorCode::invalid_argument, "invalid acronym length bounds");
}

std::vector<NumberMention> extract_numbers(std::string_view text) {
  std::vector<NumberMention> out;
  for (const auto& t : tokenize(text, Language::nl)) {
    if (t.kind != TokenKind::number) continue;
    NumberMention m;
    m.value = normalize_number(t.surface);
    m.span = t.span;
    m.is_year = is_year_value(m.value);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Finding> check_number_preservation(std::string_view source,
                                               std::string_view simplified) {
  const auto src = extract_numbers(source);
  const auto simp = extract_numbers(simplified);
  auto source_only = unmatched(src, simp);
  const auto simplified_only = unmatched(simp, src);

  std::vector<Finding> findings;
  std::vector<bool> paired(source_only.size(), false);
  for (const auto& added : simplified_only) {
    const std::string cls = magnitude_class(added);
    std::size_t k = 0;
    while (k < source_only.size() &&
           (paired[k] || magnitude_class(source_only[k]) != cls))
      ++k;
    Finding f;
    f.check_id = CheckId::number_mutation;
    f.simplified_span = added.span;
    if (k < source_only.size()) {
      paired[k] = true;
      f.severity = Severity::error;
      f.source_span = source_only[k].span;
      f.message = "number changed: " + source_only[k].value + " became " +
                  added.value;
    } else {
      f.severity = Severity::warning;
      f.message = "number " + added.value + " does not occur in the source";
    }
    findings.push_back(std::move(f));
  }
  for (std::size_t k = 0; k < source_only.size(); ++k) {
    if (paired[k]) continue;
    Finding f;
    f.check_id = CheckId::number_dropped;
    f.severity = Severity::warning;
    f.source_span = source_only[k].span;
    f.message = "number " + source_only[k].value + " is missing from the simplification";
    findings.push_back(std::move(f));
  }
  return findings;
}

std::vector<Finding> check_entity_retention(std::string_view source,
                                            std::string_view simplified) {
  std::set<std::string> kept;
  for (const auto& t : tokenize(simplified, Language::nl))
    if (t.kind == TokenKind::word) kept.insert(t.surface);

  std::vector<Finding> findings;
  for (const auto& sentence : split_sentences(source, Language::nl)) {
    const auto& tokens = sentence.tokens;
    std::size_t first_word = 0;
    while (first_word < tokens.size() && tokens[first_word].kind != TokenKind::word)
      ++first_word;

    for (std::size_t i = 0; i < tokens.size();) {
      if (!is_capitalized_word(tokens[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < tokens.size() && is_capitalized_word(tokens[j])) ++j;
      const bool sentence_initial_single = i == first_word && j - i == 1;
      if (!sentence_initial_single) {
        const bool overlap = std::any_of(
            tokens.begin() + static_cast<std::ptrdiff_t>(i),
            tokens.begin() + static_cast<std::ptrdiff_t>(j),
            [&](const Token& t) { return kept.count(t.surface) > 0; });
        if (!overlap) {
          const Span span{tokens[i].span.begin, tokens[j - 1].span.end};
          Finding f;
          f.check_id = CheckId::entity_dropped;
          f.severity = Severity::warning;
          f.source_span = span;
          f.message = "entity '" +
                      std::string(source.substr(span.begin, span.size())) +
                      "' does not appear in the simplification";
          findings.push_back(std::move(f));
        }
      }
      i = j;
    }
  }
  return findings;
}

std::vector<Finding> check_acronym_expansion(std::string_view simplified,
                                             const DiagnosticsConfig& cfg) {
  const auto tokens = tokenize(simplified, Language::nl);
  std::set<std::string> seen;
  std::vector<Finding> findings;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_acronym(tokens[i], cfg)) continue;
    const std::string& acronym = tokens[i].surface;
    if (!seen.insert(acronym).second) continue;  // only the first use counts
    if (expanded_before(tokens, i, acronym) || expanded_after(tokens, i, acronym))
      continue;
    Finding f;
    f.check_id = CheckId::acronym_unexpanded;
    f.severity = Severity::warning;
    f.simplified_span = tokens[i].span;
    f.message = "acronym " + acronym + " is not expanded at its first use";
    findings.push_back(std::move(f));
  }
  return findings;
}

std::vector<Finding> check_sentence_length(std::string_view text,
                                           const DiagnosticsConfig& cfg) {
  std::vector<Finding> findings;
  for (const auto& s : split_sentences(text, Language::nl)) {
    const std::size_t words = s.word_count();
    if (words <= static_cast<std::size_t>(cfg.max_sentence_words)) continue;
    Finding f;
    f.check_id = CheckId::sentence_too_long;
    f.severity = Severity::warning;
    f.simplified_span = s.span;
    f.message = "sentence has " + std::to_string(words) + " words (max " +
                std::to_string(cfg.max_sentence_words) + ")";
    findings.push_back(std::move(f));
  }
  return findings;
}

std::vector<Finding> check_low_frequency_words(std::string_view text,
                                               const FrequencyList& freq,
                                               const DiagnosticsConfig& cfg) {
  if (freq.empty())
    throw Error(ErrorCode::invalid_argument, "frequency list is empty");
  std::set<std::string> reported;
  std::vector<Finding> findings;
  for (const auto& t : tokenize(text, Language::nl)) {
    if (t.kind != TokenKind::word) continue;
    const std::string word = to_lower(t.surface);
    if (freq.relative(word) >= cfg.freq_threshold) continue;
    if (!reported.insert(word).second) continue;
    Finding f;
    f.check_id = CheckId::low_frequency_word;
    f.severity = Severity::info;
    f.simplified_span = t.span;
    f.message = "low-frequency word '" + t.surface + "'";
    findings.push_back(std::move(f));
  }
  return findings;
}

std::vector<Finding> check_compression(std::string_view source,
                                       std::string_view simplified,
                                       const DiagnosticsConfig& cfg) {
  const std::size_t src_words = word_count(source);
  if (src_words == 0) return {};
  const double ratio =
      static_cast<double>(word_count(simplified)) / static_cast<double>(src_words);
  if (ratio >= cfg.compression_ratio_floor) return {};
  Finding f;
  f.check_id = CheckId::aggressive_compression;
  f.severity = Severity::warning;
  f.message = "simplification keeps " + format_ratio(ratio) +
              " of the source words (floor " +
              format_ratio(cfg.compression_ratio_floor) + ")";
  return {f};
}

std::vector<Finding> run_diagnostics(std::string_view source,
                                     std::string_view simplified,
                                     const FrequencyList& freq,
                                     const DiagnosticsConfig& cfg) {
  if (is_blank(source) || is_blank(simplified))
    throw Error(ErrorCode::empty_text, "diagnostics need two non-empty texts");
  cfg.validate();

  std::vector<Finding> all;
  auto append = [&all](std::vector<Finding> part) {
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  };
  append(check_number_preservation(source, simplified));
  append(check_entity_retention(source, simplified));
  append(check_acronym_expansion(simplified, cfg));
  append(check_sentence_length(simplified, cfg));
  if (!freq.empty()) append(check_low_frequency_words(simplified, freq, cfg));
  append(check_compression(source, simplified, cfg));

  std::stable_sort(all.begin(), all.end(), [](const Finding& a, const Finding& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return position_of(a) < position_of(b);
  });
  return all;
}

}  // namespace artist
