#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artist/segmentation.hpp"

namespace artist {

// Declaration order is the fixed reporting order of run_diagnostics.
enum class CheckId {
  number_mutation,
  number_dropped,
  entity_dropped,
  acronym_unexpanded,
  sentence_too_long,
  low_frequency_word,
  aggressive_compression,
};

enum class Severity { info, warning, error };

std::string_view to_string(CheckId id);
std::string_view to_string(Severity s);
std::optional<CheckId> parse_check_id(std::string_view s);
std::optional<Severity> parse_severity(std::string_view s);

struct Finding {
  CheckId check_id = CheckId::number_mutation;
  Severity severity = Severity::info;
  std::string message;
  std::optional<Span> source_span;
  std::optional<Span> simplified_span;

  bool operator==(const Finding&) const = default;
};

struct DiagnosticsConfig {
  int max_sentence_words = 15;
  int min_sentence_words = 10;
  double freq_threshold = 1e-5;
  double compression_ratio_floor = 0.4;
  int acronym_min_length = 2;
  int acronym_max_length = 6;

  // Throws Error(invalid_argument) when thresholds are inconsistent.
  void validate() const;
};

struct NumberMention {
  std::string value;  // normalized: no ordinal suffix, no thousands separators
  Span span;
  bool is_year = false;
};

// Number tokens in text order. Ordinal suffixes ("18e" -> "18") and
// thousands separators ("16.000" -> "16000") are stripped.
std::vector<NumberMention> extract_numbers(std::string_view text);

std::vector<Finding> check_number_preservation(std::string_view source,
                                               std::string_view simplified);

// Entities are maximal runs of capitalized word tokens; a single-token run
// at a sentence start is ignored.
std::vector<Finding> check_entity_retention(std::string_view source,
                                            std::string_view simplified);

std::vector<Finding> check_acronym_expansion(std::string_view simplified,
                                             const DiagnosticsConfig& cfg = {});

std::vector<Finding> check_sentence_length(std::string_view text,
                                           const DiagnosticsConfig& cfg = {});

std::vector<Finding> check_low_frequency_words(std::string_view text,
                                               const FrequencyList& freq,
                                               const DiagnosticsConfig& cfg = {});

std::vector<Finding> check_compression(std::string_view source,
                                       std::string_view simplified,
                                       const DiagnosticsConfig& cfg = {});

// All checks; style checks (acronym, length, frequency) run on the
// simplified text. Ordered by (check_id, position). Throws Error(empty_text).
std::vector<Finding> run_diagnostics(std::string_view source,
                                     std::string_view simplified,
                                     const FrequencyList& freq,
                                     const DiagnosticsConfig& cfg = {});

// True for the checks that compare the simplification against its source.
bool is_preservation_check(CheckId id);

}  // namespace artist
