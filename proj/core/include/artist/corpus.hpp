#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "artist/evalmetrics.hpp"

namespace artist {

enum class Level { primary, lower_secondary, upper_secondary };

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view s);

struct CorpusTopic {
  std::string topic_id;
  std::string title;
  std::map<Level, std::vector<std::string>> levels;

  bool operator==(const CorpusTopic&) const = default;
};

// Paragraph-level alignment between two levels of one topic. Several
// records may point at the same paragraph (many-to-one alignments).
struct AlignedPair {
  std::string topic_id;
  Level complex_level = Level::upper_secondary;
  Level simple_level = Level::lower_secondary;
  std::size_t complex_paragraph_idx = 0;
  std::size_t simple_paragraph_idx = 0;
  std::string complex_text;
  std::string simple_text;

  bool operator==(const AlignedPair&) const = default;
};

// Canonical pair order: topic, levels, then paragraph indices.
bool pair_order(const AlignedPair& a, const AlignedPair& b);

struct Corpus {
  std::vector<CorpusTopic> topics;  // file order
  std::vector<AlignedPair> pairs;   // canonical order, duplicates removed

  const CorpusTopic* find(std::string_view topic_id) const;
  bool operator==(const Corpus&) const = default;
};

// JSON-lines: topic records and alignment records in any order. Throws
// ParseError(line), Error(unknown_topic), Error(index_out_of_range) or
// Error(duplicate_topic).
Corpus load_corpus(std::istream& in);
Corpus load_corpus_file(const std::string& path);
void save_corpus(std::ostream& out, const Corpus& corpus);

std::vector<AlignedPair> get_pairs(const Corpus& corpus, Level complex_level,
                                   Level simple_level);

// ---------------------------------------------------------------- results

struct EvalResults {
  std::vector<CorpusEvalRow> rows;
  std::vector<RatingRecord> ratings;

  bool operator==(const EvalResults&) const = default;
};

// JSON-lines with record_type "eval_row" or "rating"; scores keep full
// precision. Throws Error(io_error).
void save_eval_results(const std::string& path, const std::vector<CorpusEvalRow>& rows,
                       const std::vector<RatingRecord>& ratings);
void write_eval_results(std::ostream& out, const EvalResults& results);
EvalResults load_eval_results(std::istream& in);
EvalResults load_eval_results_file(const std::string& path);
// Appends one rating record line to path, creating the file if needed.
void append_rating(const std::string& path, const RatingRecord& rating);

}  // namespace artist
