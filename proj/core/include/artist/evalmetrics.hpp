#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artist/segmentation.hpp"

namespace artist {

using TokenList = std::vector<std::string>;

// Tokens as the metrics see them: every token from tokenize(), optionally
// case-folded.
TokenList metric_tokens(std::string_view text, bool case_fold = true,
                        Language lang = Language::nl);

// ---------------------------------------------------------------- BLEU

enum class Smoothing { none, add_one_on_zero };

std::string_view to_string(Smoothing s);

struct BleuOptions {
  int max_n = 4;
  Smoothing smoothing = Smoothing::none;
  bool case_fold = true;

  // Throws Error(invalid_argument) unless 1 <= max_n <= 9.
  void validate() const;
};

struct NgramMatch {
  std::size_t matched = 0;
  std::size_t total = 0;

  bool operator==(const NgramMatch&) const = default;
};

// Modified (clipped) n-gram precision counts.
NgramMatch clipped_ngram_precision(const TokenList& candidate,
                                   const std::vector<TokenList>& references,
                                   int n);

// Sufficient statistics; summing them over segments gives pooled BLEU.
struct BleuStats {
  std::vector<NgramMatch> orders;  // index k holds n = k + 1
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;  // closest reference length

  BleuStats& operator+=(const BleuStats& other);
};

// Closest reference length, ties resolved toward the shorter reference.
std::size_t closest_reference_length(std::size_t candidate_length,
                                     const std::vector<TokenList>& references);
double brevity_penalty(std::size_t candidate_length,
                       std::size_t reference_length);

BleuStats bleu_stats(const TokenList& candidate,
                     const std::vector<TokenList>& references, int max_n);

// Orders the candidate is too short to contain (total == 0) are left out of
// the geometric mean, so bleu(x, {x}) == 1 for any non-empty x.
double bleu_from_stats(const BleuStats& stats, Smoothing smoothing);

// Throws Error(empty_candidate) / Error(no_references).
double bleu(const TokenList& candidate, const std::vector<TokenList>& references,
            const BleuOptions& opts = {});
double bleu(std::string_view candidate, const std::vector<std::string>& references,
            const BleuOptions& opts = {}, Language lang = Language::nl);

// ---------------------------------------------------------------- SARI

struct SariScore {
  double add_f1 = 0.0;
  double keep_f1 = 0.0;
  double del_precision = 0.0;
  double overall = 0.0;
};

// Per order, source and candidate counts are scaled by the number of
// references and reference counts are summed, which averages the references.
// A component whose candidate-side and reference-side sets are both empty
// scores precision = recall = 1.
// Throws Error(empty_input) / Error(no_references).
SariScore sari(const TokenList& source, const TokenList& candidate,
               const std::vector<TokenList>& references, int max_n = 4);
SariScore sari(std::string_view source, std::string_view candidate,
               const std::vector<std::string>& references, int max_n = 4,
               Language lang = Language::nl);

// ---------------------------------------------------------------- corpus tables

enum class EvalMetric { bleu, sari };
enum class AggregationMode { pooled, mean_of_pairs };

std::string_view to_string(EvalMetric m);
std::string_view to_string(AggregationMode m);
std::optional<EvalMetric> parse_eval_metric(std::string_view s);
std::optional<AggregationMode> parse_aggregation_mode(std::string_view s);

// One scored unit: a candidate simplification of `source` with its
// references. Several segments may share a topic.
struct EvalSegment {
  std::string topic_id;
  std::string source;
  std::string candidate;
  std::vector<std::string> references;
};

struct CorpusEvalRow {
  std::string topic_id;
  std::string backend_id;
  EvalMetric metric = EvalMetric::bleu;
  double score = 0.0;  // BLEU in [0,1], SARI in [0,100]

  bool operator==(const CorpusEvalRow&) const = default;
};

struct CorpusEvalTable {
  std::vector<CorpusEvalRow> rows;  // descending score, ties by topic_id
  std::vector<std::string> failed;  // sorted topic ids
};

// Ranks rows in place and truncates to top_k.
void rank_rows(std::vector<CorpusEvalRow>& rows, std::size_t top_k);

CorpusEvalTable corpus_bleu_table(const std::vector<EvalSegment>& segments,
                                  const std::string& backend_id,
                                  const BleuOptions& opts, std::size_t top_k,
                                  AggregationMode mode = AggregationMode::pooled);

// SARI has no pooled-count form; both modes average the segment scores.
CorpusEvalTable corpus_sari_table(const std::vector<EvalSegment>& segments,
                                  const std::string& backend_id, int max_n,
                                  std::size_t top_k);

// "topic<TAB>score" header, scores rendered with 3 decimals.
std::string render_table_tsv(const std::vector<CorpusEvalRow>& rows);

// ---------------------------------------------------------------- ratings

struct RatingRecord {
  std::string topic_id;
  std::string backend_id;
  std::string rater_id;
  int simplicity = 1;
  int fluency = 1;
  int adequacy = 1;

  // Throws Error(invalid_argument) when a score is outside 1..5.
  void validate() const;
  bool operator==(const RatingRecord&) const = default;
};

struct RatingScope {
  std::string topic_id;
  std::string backend_id;

  auto operator<=>(const RatingScope&) const = default;
};

struct RatingMeans {
  double simplicity = 0.0;
  double fluency = 0.0;
  double adequacy = 0.0;
  std::size_t count = 0;
};

// Half-up rounding to one decimal, for display.
double round_display(double value);

// Unrounded means per (topic_id, backend_id). Throws Error(empty_scope) when
// there are no records.
std::map<RatingScope, RatingMeans> aggregate_ratings(
    const std::vector<RatingRecord>& records);

}  // namespace artist
