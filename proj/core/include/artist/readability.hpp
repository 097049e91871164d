#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "artist/segmentation.hpp"

namespace artist {

// Coefficient ledger. Each set comes from the formula's original publication.
namespace coefficients {

/// Flesch reading ease (Flesch 1948, as restated by Kincaid et al. 1975).
struct FleschReadingEase {
  static constexpr double base = 206.835;
  static constexpr double per_sentence_length = 1.015;
  static constexpr double per_word_syllables = 84.6;
};

/// Flesch-Kincaid grade level (Kincaid, Fishburne, Rogers & Chissom 1975).
struct FleschKincaidGrade {
  static constexpr double per_sentence_length = 0.39;
  static constexpr double per_word_syllables = 11.8;
  static constexpr double offset = 15.59;
};

/// Dutch recalibration of Flesch reading ease (Douma 1960).
struct FleschDouma {
  static constexpr double base = 206.84;
  static constexpr double per_sentence_length = 0.93;
  static constexpr double per_word_syllables = 77.0;
};

/// SMOG grade (McLaughlin 1969).
struct Smog {
  static constexpr double scale = 1.0430;
  static constexpr double offset = 3.1291;
  static constexpr double sample_sentences = 30.0;
};

/// Spache readability, original formula (Spache 1953/1974).
struct Spache {
  static constexpr double per_sentence_length = 0.141;
  static constexpr double per_difficult_percent = 0.086;
  static constexpr double offset = 0.839;
};

}  // namespace coefficients

enum class Metric {
  flesch_reading_ease,
  flesch_kincaid,  // grade level
  flesch_douma,
  smog,
  kpc_avi,
  spache,
};

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view id);
const std::vector<Metric>& all_metrics();

// SMOG below this many sentences carries a warning.
inline constexpr std::size_t kSmogMinSentences = 30;

struct AviRow {
  double max_avg_syllables_per_word = 0.0;
  double max_avg_words_per_sentence = 0.0;
  int avi_level = 1;

  bool operator==(const AviRow&) const = default;
};

class AviTable {
 public:
  AviTable() = default;
  // Throws Error(invalid_argument) unless rows ascend by level with
  // non-decreasing thresholds and levels in 1..9.
  explicit AviTable(std::vector<AviRow> rows);

  // Header "max_syll_per_word<TAB>max_words_per_sentence<TAB>avi_level".
  static AviTable load(std::istream& in);
  static AviTable load_file(const std::string& path);
  // Illustrative thresholds only; not the official KPC calibration.
  static const AviTable& illustrative_default();

  const std::vector<AviRow>& rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }
  int max_level() const;

 private:
  std::vector<AviRow> rows_;
};

struct AviResult {
  int level = 1;
  bool above_table = false;
};

double flesch_reading_ease(const TextStats& stats);
double flesch_kincaid_grade(const TextStats& stats);
// Non-Dutch input is scored but callers should surface a warning.
double flesch_douma(const TextStats& stats);
double smog(const TextStats& stats);
bool smog_unreliable(const TextStats& stats);

// Single-sentence Spache: ASL is the sentence's word count; numbers are
// familiar. `familiar` holds lowercased words.
double spache(const Sentence& sentence, const std::set<std::string>& familiar);
// Text-level Spache over all sentences.
double spache(const std::vector<Sentence>& sentences,
              const std::set<std::string>& familiar);

AviResult kpc_avi(const TextStats& stats, const AviTable& table);

struct SentenceScore {
  std::size_t index = 0;
  double spache = 0.0;

  bool operator==(const SentenceScore&) const = default;
};

struct ReadabilityReport {
  Language language = Language::nl;
  std::map<std::string, double> text_scores;  // metric id -> score
  std::vector<SentenceScore> sentence_scores;  // only when spache requested
  std::vector<std::string> warnings;
  TextStats stats;
};

struct AssessOptions {
  std::set<std::string> familiar;
  AviTable avi_table = AviTable::illustrative_default();
  AbbreviationList abbreviations = AbbreviationList::defaults();
};

// Throws Error(empty_text), Error(degenerate_stats) or
// Error(invalid_argument) when `metrics` is empty.
ReadabilityReport assess(std::string_view text, Language lang,
                         const std::vector<Metric>& metrics,
                         const AssessOptions& options);

}  // namespace artist
