#include "artist/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <unordered_map>

#include "artist/error.hpp"

namespace artist {

namespace {

// Tokens are interned per call so n-grams become short u32 strings.
class Interner {
 public:
  std::u32string encode(const TokenList& tokens) {
    std::u32string out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      auto [it, inserted] =
          ids_.try_emplace(t, static_cast<char32_t>(ids_.size() + 1));
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, char32_t> ids_;
};

using NgramCounts = std::map<std::u32string, std::size_t>;

NgramCounts count_ngrams(const std::u32string& seq, int n) {
  NgramCounts counts;
  const auto len = static_cast<std::size_t>(n);
  if (seq.size() < len) return counts;
  for (std::size_t i = 0; i + len <= seq.size(); ++i)
    ++counts[seq.substr(i, len)];
  return counts;
}

NgramMatch clipped(const std::u32string& cand,
                   const std::vector<std::u32string>& refs, int n) {
  const auto cand_counts = count_ngrams(cand, n);
  NgramCounts max_ref;
  for (const auto& ref : refs) {
    for (const auto& [gram, c] : count_ngrams(ref, n)) {
      auto& slot = max_ref[gram];
      slot = std::max(slot, c);
    }
  }
  NgramMatch m;
  for (const auto& [gram, c] : cand_counts) {
    m.total += c;
    const auto it = max_ref.find(gram);
    if (it != max_ref.end()) m.matched += std::min(c, it->second);
  }
  return m;
}

void require_inputs(const TokenList& candidate,
                    const std::vector<TokenList>& references) {
  if (candidate.empty())
    throw Error(ErrorCode::empty_candidate, "candidate is empty");
  if (references.empty())
    throw Error(ErrorCode::no_references, "no references given");
  for (const auto& r : references)
    if (r.empty()) throw Error(ErrorCode::empty_input, "empty reference");
}

}  // namespace

TokenList metric_tokens(std::string_view text, bool case_fold, Language lang) {
  TokenList out;
  for (auto& t : tokenize(text, lang))
    out.push_back(case_fold ? to_lower(t.surface) : std::move(t.surface));
  return out;
}

std::string_view to_string(Smoothing s) {
  return s == Smoothing::none ? "none" : "add_one_on_zero";
}

void BleuOptions::validate() const {
  if (max_n < 1 || max_n > 9)
    throw Error(ErrorCode::invalid_argument, "BLEU max_n must be in 1..9");
}

NgramMatch clipped_ngram_precision(const TokenList& candidate,
                                   const std::vector<TokenList>& references,
                                   int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n-gram order must be >= 1");
  Interner interner;
  const auto cand = interner.encode(candidate);
  std::vector<std::u32string> refs;
  for (const auto& r : references) refs.push_back(interner.encode(r));
  return clipped(cand, refs, n);
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (orders.size() < other.orders.size()) orders.resize(other.orders.size());
  for (std::size_t k = 0; k < other.orders.size(); ++k) {
    orders[k].matched += other.orders[k].matched;
    orders[k].total += other.orders[k].total;
  }
  candidate_length += other.candidate_length;
  reference_length += other.reference_length;
  return *this;
}

std::size_t closest_reference_length(std::size_t candidate_length,
                                     const std::vector<TokenList>& references) {
  std::size_t best = 0;
  std::size_t best_diff = static_cast<std::size_t>(-1);
  for (const auto& r : references) {
    const std::size_t len = r.size();
    const std::size_t diff =
        len > candidate_length ? len - candidate_length : candidate_length - len;
    if (diff < best_diff || (diff == best_diff && len < best)) {
      best = len;
      best_diff = diff;
    }
  }
  return best;
}

double brevity_penalty(std::size_t candidate_length,
                       std::size_t reference_length) {
  if (candidate_length == 0) return 0.0;
  if (candidate_length >= reference_length) return 1.0;
  return std::exp(1.0 - static_cast<double>(reference_length) /
                            static_cast<double>(candidate_length));
}

BleuStats bleu_stats(const TokenList& candidate,
                     const std::vector<TokenList>& references, int max_n) {
  Interner interner;
  const auto cand = interner.encode(candidate);
  std::vector<std::u32string> refs;
  for (const auto& r : references) refs.push_back(interner.encode(r));

  BleuStats stats;
  for (int n = 1; n <= max_n; ++n) stats.orders.push_back(clipped(cand, refs, n));
  stats.candidate_length = candidate.size();
  stats.reference_length = closest_reference_length(candidate.size(), references);
  return stats;
}

double bleu_from_stats(const BleuStats& stats, Smoothing smoothing) {
  double log_sum = 0.0;
  int used = 0;
  for (const auto& o : stats.orders) {
    if (o.total == 0) continue;
    double p;
    if (o.matched == 0) {
      if (smoothing == Smoothing::none) return 0.0;
      p = 1.0 / static_cast<double>(o.total + 1);
    } else {
      p = static_cast<double>(o.matched) / static_cast<double>(o.total);
    }
    log_sum += std::log(p);
    ++used;
  }
  if (used == 0) return 0.0;
  const double bp = brevity_penalty(stats.candidate_length, stats.reference_length);
  // Exact precisions of 1 must give exactly bp, not exp(log(1)) noise.
  const double geo = log_sum == 0.0 ? 1.0 : std::exp(log_sum / used);
  return std::clamp(bp * geo, 0.0, 1.0);
}

double bleu(const TokenList& candidate, const std::vector<TokenList>& references,
            const BleuOptions& opts) {
  opts.validate();
  require_inputs(candidate, references);
  return bleu_from_stats(bleu_stats(candidate, references, opts.max_n),
                         opts.smoothing);
}

double bleu(std::string_view candidate, const std::vector<std::string>& references,
            const BleuOptions& opts, Language lang) {
  std::vector<TokenList> refs;
  for (const auto& r : references)
    refs.push_back(metric_tokens(r, opts.case_fold, lang));
  return bleu(metric_tokens(candidate, opts.case_fold, lang), refs, opts);
}

// ---------------------------------------------------------------- SARI

namespace {

NgramCounts scaled(const NgramCounts& counts, std::size_t factor) {
  NgramCounts out;
  for (const auto& [g, c] : counts) out[g] = c * factor;
  return out;
}

NgramCounts intersect(const NgramCounts& a, const NgramCounts& b) {
  NgramCounts out;
  for (const auto& [g, c] : a) {
    const auto it = b.find(g);
    if (it != b.end()) out[g] = std::min(c, it->second);
  }
  return out;
}

// Saturating multiset difference; zero counts are dropped.
NgramCounts subtract(const NgramCounts& a, const NgramCounts& b) {
  NgramCounts out;
  for (const auto& [g, c] : a) {
    const auto it = b.find(g);
    const std::size_t other = it == b.end() ? 0 : it->second;
    if (c > other) out[g] = c - other;
  }
  return out;
}

std::size_t at(const NgramCounts& m, const std::u32string& g) {
  const auto it = m.find(g);
  return it == m.end() ? 0 : it->second;
}

double f1(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

struct SariOrder {
  double add = 0.0;
  double keep = 0.0;
  double del = 0.0;
};

SariOrder sari_order(const std::u32string& src, const std::u32string& cand,
                     const std::vector<std::u32string>& refs, int n) {
  const std::size_t numref = refs.size();
  const auto s_counts = count_ngrams(src, n);
  const auto c_counts = count_ngrams(cand, n);
  NgramCounts r_counts;
  for (const auto& r : refs)
    for (const auto& [g, c] : count_ngrams(r, n)) r_counts[g] += c;

  const auto s_rep = scaled(s_counts, numref);
  const auto c_rep = scaled(c_counts, numref);

  SariOrder out;

  // KEEP
  const auto keep = intersect(s_rep, c_rep);
  const auto keep_good = intersect(keep, r_counts);
  const auto keep_all = intersect(s_rep, r_counts);
  double keep_p_sum = 0.0, keep_r_sum = 0.0;
  for (const auto& [g, c] : keep_good) {
    keep_p_sum += static_cast<double>(c) / static_cast<double>(at(keep, g));
    keep_r_sum += static_cast<double>(c) / static_cast<double>(at(keep_all, g));
  }
  double keep_p, keep_r;
  if (keep.empty() && keep_all.empty()) {
    keep_p = keep_r = 1.0;
  } else {
    keep_p = keep.empty() ? 0.0 : keep_p_sum / static_cast<double>(keep.size());
    keep_r = keep_all.empty() ? 0.0
                              : keep_r_sum / static_cast<double>(keep_all.size());
  }
  out.keep = f1(keep_p, keep_r);

  // DELETION (precision only)
  const auto del = subtract(s_rep, c_rep);
  const auto del_good = subtract(del, r_counts);
  const auto del_all = subtract(s_rep, r_counts);
  if (del.empty() && del_all.empty()) {
    out.del = 1.0;
  } else if (!del.empty()) {
    double sum = 0.0;
    for (const auto& [g, c] : del_good)
      sum += static_cast<double>(c) / static_cast<double>(at(del, g));
    out.del = sum / static_cast<double>(del.size());
  }

  // ADDITION (sets)
  std::set<std::u32string> add, add_all;
  for (const auto& [g, c] : c_counts)
    if (!s_counts.count(g)) add.insert(g);
  for (const auto& [g, c] : r_counts)
    if (!s_counts.count(g)) add_all.insert(g);
  if (add.empty() && add_all.empty()) {
    out.add = 1.0;
  } else {
    std::size_t good = 0;
    for (const auto& g : add)
      if (r_counts.count(g)) ++good;
    const double p =
        add.empty() ? 0.0 : static_cast<double>(good) / static_cast<double>(add.size());
    const double r = add_all.empty() ? 0.0
                                     : static_cast<double>(good) /
                                           static_cast<double>(add_all.size());
    out.add = f1(p, r);
  }
  return out;
}

}  // namespace

SariScore sari(const TokenList& source, const TokenList& candidate,
               const std::vector<TokenList>& references, int max_n) {
  if (max_n < 1) throw Error(ErrorCode::invalid_argument, "SARI max_n must be >= 1");
  if (source.empty() || candidate.empty())
    throw Error(ErrorCode::empty_input, "SARI source and candidate must be non-empty");
  if (references.empty())
    throw Error(ErrorCode::no_references, "no references given");
  for (const auto& r : references)
    if (r.empty()) throw Error(ErrorCode::empty_input, "empty reference");

  Interner interner;
  const auto src = interner.encode(source);
  const auto cand = interner.encode(candidate);
  std::vector<std::u32string> refs;
  for (const auto& r : references) refs.push_back(interner.encode(r));

  double add = 0.0, keep = 0.0, del = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto o = sari_order(src, cand, refs, n);
    add += o.add;
    keep += o.keep;
    del += o.del;
  }
  SariScore s;
  s.add_f1 = 100.0 * add / max_n;
  s.keep_f1 = 100.0 * keep / max_n;
  s.del_precision = 100.0 * del / max_n;
  s.overall = (s.add_f1 + s.keep_f1 + s.del_precision) / 3.0;
  return s;
}

SariScore sari(std::string_view source, std::string_view candidate,
               const std::vector<std::string>& references, int max_n,
               Language lang) {
  std::vector<TokenList> refs;
  for (const auto& r : references) refs.push_back(metric_tokens(r, true, lang));
  return sari(metric_tokens(source, true, lang),
              metric_tokens(candidate, true, lang), refs, max_n);
}

// ---------------------------------------------------------------- tables

std::string_view to_string(EvalMetric m) {
  return m == EvalMetric::bleu ? "bleu" : "sari";
}

std::string_view to_string(AggregationMode m) {
  return m == AggregationMode::pooled ? "pooled" : "mean_of_pairs";
}

std::optional<EvalMetric> parse_eval_metric(std::string_view s) {
  if (s == "bleu") return EvalMetric::bleu;
  if (s == "sari") return EvalMetric::sari;
  return std::nullopt;
}

std::optional<AggregationMode> parse_aggregation_mode(std::string_view s) {
  if (s == "pooled") return AggregationMode::pooled;
  if (s == "mean_of_pairs") return AggregationMode::mean_of_pairs;
  return std::nullopt;
}

void rank_rows(std::vector<CorpusEvalRow>& rows, std::size_t top_k) {
  std::sort(rows.begin(), rows.end(),
            [](const CorpusEvalRow& a, const CorpusEvalRow& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.topic_id < b.topic_id;
            });
  if (rows.size() > top_k) rows.resize(top_k);
}

namespace {

// Groups segments by topic, preserving segment order inside each topic.
std::map<std::string, std::vector<const EvalSegment*>> by_topic(
    const std::vector<EvalSegment>& segments) {
  std::map<std::string, std::vector<const EvalSegment*>> groups;
  for (const auto& s : segments) groups[s.topic_id].push_back(&s);
  return groups;
}

void check_table_args(const std::vector<EvalSegment>& segments,
                      std::size_t top_k) {
  if (segments.empty())
    throw Error(ErrorCode::empty_input, "no segments to evaluate");
  if (top_k < 1) throw Error(ErrorCode::invalid_argument, "top_k must be >= 1");
}

}  // namespace

CorpusEvalTable corpus_bleu_table(const std::vector<EvalSegment>& segments,
                                  const std::string& backend_id,
                                  const BleuOptions& opts, std::size_t top_k,
                                  AggregationMode mode) {
  check_table_args(segments, top_k);
  opts.validate();
  CorpusEvalTable table;
  for (const auto& [topic, segs] : by_topic(segments)) {
    try {
      double score = 0.0;
      if (mode == AggregationMode::pooled) {
        BleuStats pooled;
        for (const auto* s : segs) {
          const auto cand = metric_tokens(s->candidate, opts.case_fold);
          std::vector<TokenList> refs;
          for (const auto& r : s->references)
            refs.push_back(metric_tokens(r, opts.case_fold));
          require_inputs(cand, refs);
          pooled += bleu_stats(cand, refs, opts.max_n);
        }
        score = bleu_from_stats(pooled, opts.smoothing);
      } else {
        for (const auto* s : segs) score += bleu(s->candidate, s->references, opts);
        score /= static_cast<double>(segs.size());
      }
      table.rows.push_back({topic, backend_id, EvalMetric::bleu, score});
    } catch (const Error&) {
      table.failed.push_back(topic);
    }
  }
  rank_rows(table.rows, top_k);
  return table;
}

CorpusEvalTable corpus_sari_table(const std::vector<EvalSegment>& segments,
                                  const std::string& backend_id, int max_n,
                                  std::size_t top_k) {
  check_table_args(segments, top_k);
  CorpusEvalTable table;
  for (const auto& [topic, segs] : by_topic(segments)) {
    try {
      double score = 0.0;
      for (const auto* s : segs)
        score += sari(s->source, s->candidate, s->references, max_n).overall;
      table.rows.push_back({topic, backend_id, EvalMetric::sari,
                            score / static_cast<double>(segs.size())});
    } catch (const Error&) {
      table.failed.push_back(topic);
    }
  }
  rank_rows(table.rows, top_k);
  return table;
}

std::string render_table_tsv(const std::vector<CorpusEvalRow>& rows) {
  std::string out = "topic\tscore\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.score);
    out += r.topic_id;
    out += '\t';
    out += buf;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------- ratings

void RatingRecord::validate() const {
  for (int v : {simplicity, fluency, adequacy})
    if (v < 1 || v > 5)
      throw Error(ErrorCode::invalid_argument, "rating scores must be in 1..5");
}

double round_display(double value) {
  // The epsilon absorbs binary error in means such as 1.25 - 1e-16.
  return std::floor(value * 10.0 + 0.5 + 1e-9) / 10.0;
}

std::map<RatingScope, RatingMeans> aggregate_ratings(
    const std::vector<RatingRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::empty_scope, "no ratings in scope");
  struct Sums {
    long simplicity = 0, fluency = 0, adequacy = 0;
    std::size_t count = 0;
  };
  std::map<RatingScope, Sums> sums;
  for (const auto& r : records) {
    r.validate();
    auto& s = sums[{r.topic_id, r.backend_id}];
    s.simplicity += r.simplicity;
    s.fluency += r.fluency;
    s.adequacy += r.adequacy;
    ++s.count;
  }
  std::map<RatingScope, RatingMeans> out;
  for (const auto& [scope, s] : sums) {
    const auto n = static_cast<double>(s.count);
    out[scope] = {static_cast<double>(s.simplicity) / n,
                  static_cast<double>(s.fluency) / n,
                  static_cast<double>(s.adequacy) / n, s.count};
  }
  return out;
}

}  // namespace artist
