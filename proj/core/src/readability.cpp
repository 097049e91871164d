#include "artist/readability.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "artist/error.hpp"

namespace artist {

namespace {

void require_stats(const TextStats& stats, const char* metric) {
  if (stats.n_sentences < 1 || stats.n_words < 1) {
    throw Error(ErrorCode::degenerate_stats,
                std::string(metric) +
                    ": needs at least one sentence and one word");
  }
}

double words_per_sentence(const TextStats& s) {
  return static_cast<double>(s.n_words) / static_cast<double>(s.n_sentences);
}

double syllables_per_word(const TextStats& s) {
  return static_cast<double>(s.n_syllables) / static_cast<double>(s.n_words);
}

double parse_double(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(line_no, "invalid number '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::flesch_reading_ease: return "flesch_reading_ease";
    case Metric::flesch_kincaid: return "flesch_kincaid";
    case Metric::flesch_douma: return "flesch_douma";
    case Metric::smog: return "smog";
    case Metric::kpc_avi: return "kpc_avi";
    case Metric::spache: return "spache";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view id) {
  for (Metric m : all_metrics())
    if (to_string(m) == id) return m;
  // Short aliases accepted on the command line.
  if (id == "fre") return Metric::flesch_reading_ease;
  if (id == "fk") return Metric::flesch_kincaid;
  if (id == "douma") return Metric::flesch_douma;
  if (id == "kpc" || id == "avi") return Metric::kpc_avi;
  return std::nullopt;
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics = {
      Metric::flesch_reading_ease, Metric::flesch_kincaid,
      Metric::flesch_douma,        Metric::smog,
      Metric::kpc_avi,             Metric::spache,
  };
  return metrics;
}

AviTable::AviTable(std::vector<AviRow> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (r.avi_level < 1 || r.avi_level > 9)
      throw Error(ErrorCode::invalid_argument, "AVI level out of range 1..9");
    if (!(r.max_avg_syllables_per_word > 0) || !(r.max_avg_words_per_sentence > 0))
      throw Error(ErrorCode::invalid_argument, "AVI thresholds must be positive");
    if (i == 0) continue;
    const auto& p = rows_[i - 1];
    if (r.avi_level <= p.avi_level)
      throw Error(ErrorCode::invalid_argument,
                  "AVI rows must ascend strictly by level");
    if (r.max_avg_syllables_per_word < p.max_avg_syllables_per_word ||
        r.max_avg_words_per_sentence < p.max_avg_words_per_sentence)
      throw Error(ErrorCode::invalid_argument,
                  "AVI thresholds must be non-decreasing");
  }
}

AviTable AviTable::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<AviRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "max_syll_per_word\tmax_words_per_sentence\tavi_level")
        throw ParseError(line_no, "missing AVI table header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
    AviRow row;
    row.max_avg_syllables_per_word = parse_double(fields[0], line_no);
    row.max_avg_words_per_sentence = parse_double(fields[1], line_no);
    int level = 0;
    const auto [ptr, ec] = std::from_chars(
        fields[2].data(), fields[2].data() + fields[2].size(), level);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size())
      throw ParseError(line_no, "invalid AVI level");
    row.avi_level = level;
    rows.push_back(row);
  }
  if (!header_seen) throw ParseError(line_no, "missing AVI table header");
  return AviTable(std::move(rows));
}

AviTable AviTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return load(in);
}

const AviTable& AviTable::illustrative_default() {
  static const AviTable table({
      {1.10, 5.0, 1}, {1.15, 6.0, 2}, {1.20, 7.0, 3},
      {1.25, 8.0, 4}, {1.30, 9.0, 5}, {1.35, 10.0, 6},
      {1.40, 11.0, 7}, {1.45, 13.0, 8}, {1.50, 15.0, 9},
  });
  return table;
}

int AviTable::max_level() const {
  if (rows_.empty()) throw Error(ErrorCode::empty_table, "AVI table is empty");
  return rows_.back().avi_level;
}

double flesch_reading_ease(const TextStats& stats) {
  using C = coefficients::FleschReadingEase;
  require_stats(stats, "flesch_reading_ease");
  return C::base - C::per_sentence_length * words_per_sentence(stats) -
         C::per_word_syllables * syllables_per_word(stats);
}

double flesch_kincaid_grade(const TextStats& stats) {
  using C = coefficients::FleschKincaidGrade;
  require_stats(stats, "flesch_kincaid");
  return C::per_sentence_length * words_per_sentence(stats) +
         C::per_word_syllables * syllables_per_word(stats) - C::offset;
}

double flesch_douma(const TextStats& stats) {
  using C = coefficients::FleschDouma;
  require_stats(stats, "flesch_douma");
  return C::base - C::per_sentence_length * words_per_sentence(stats) -
         C::per_word_syllables * syllables_per_word(stats);
}

double smog(const TextStats& stats) {
  using C = coefficients::Smog;
  if (stats.n_sentences < 1)
    throw Error(ErrorCode::degenerate_stats, "smog: needs at least one sentence");
  if (stats.n_polysyllables == 0) return C::offset;
  return C::scale * std::sqrt(C::sample_sentences *
                              static_cast<double>(stats.n_polysyllables) /
                              static_cast<double>(stats.n_sentences)) +
         C::offset;
}

bool smog_unreliable(const TextStats& stats) {
  return stats.n_sentences < kSmogMinSentences;
}

namespace {

struct SpacheCounts {
  std::size_t words = 0;
  std::size_t unfamiliar = 0;
};

void count_spache(const Sentence& sentence,
                  const std::set<std::string>& familiar, SpacheCounts& c) {
  for (const auto& t : sentence.tokens) {
    if (t.kind == TokenKind::number) {
      ++c.words;
    } else if (t.kind == TokenKind::word) {
      ++c.words;
      if (!familiar.count(to_lower(t.surface))) ++c.unfamiliar;
    }
  }
}

double spache_formula(double asl, double pdw) {
  using C = coefficients::Spache;
  return C::per_sentence_length * asl + C::per_difficult_percent * pdw +
         C::offset;
}

}  // namespace

double spache(const Sentence& sentence, const std::set<std::string>& familiar) {
  SpacheCounts c;
  count_spache(sentence, familiar, c);
  if (c.words == 0)
    throw Error(ErrorCode::degenerate_stats, "spache: sentence has no words");
  const double pdw = 100.0 * static_cast<double>(c.unfamiliar) /
                     static_cast<double>(c.words);
  return spache_formula(static_cast<double>(c.words), pdw);
}

double spache(const std::vector<Sentence>& sentences,
              const std::set<std::string>& familiar) {
  SpacheCounts c;
  for (const auto& s : sentences) count_spache(s, familiar, c);
  if (sentences.empty() || c.words == 0)
    throw Error(ErrorCode::degenerate_stats, "spache: text has no words");
  const double asl =
      static_cast<double>(c.words) / static_cast<double>(sentences.size());
  const double pdw = 100.0 * static_cast<double>(c.unfamiliar) /
                     static_cast<double>(c.words);
  return spache_formula(asl, pdw);
}

AviResult kpc_avi(const TextStats& stats, const AviTable& table) {
  require_stats(stats, "kpc_avi");
  if (table.empty()) throw Error(ErrorCode::empty_table, "AVI table is empty");
  const double syl = syllables_per_word(stats);
  const double wps = words_per_sentence(stats);
  for (const auto& row : table.rows()) {
    if (syl <= row.max_avg_syllables_per_word &&
        wps <= row.max_avg_words_per_sentence)
      return {row.avi_level, false};
  }
  return {table.max_level(), true};
}

ReadabilityReport assess(std::string_view text, Language lang,
                         const std::vector<Metric>& metrics,
                         const AssessOptions& options) {
  if (metrics.empty())
    throw Error(ErrorCode::invalid_argument, "no metrics requested");

  const auto blank = std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
  if (blank) throw Error(ErrorCode::empty_text, "text is empty");

  const auto sentences = split_sentences(text, lang, options.abbreviations);
  ReadabilityReport report;
  report.language = lang;
  report.stats = text_stats(sentences, lang);

  for (Metric m : metrics) {
    const std::string id(to_string(m));
    if (report.text_scores.count(id)) continue;
    switch (m) {
      case Metric::flesch_reading_ease:
        report.text_scores[id] = flesch_reading_ease(report.stats);
        break;
      case Metric::flesch_kincaid:
        report.text_scores[id] = flesch_kincaid_grade(report.stats);
        break;
      case Metric::flesch_douma:
        report.text_scores[id] = flesch_douma(report.stats);
        if (lang != Language::nl)
          report.warnings.push_back(
              "flesch_douma is calibrated for Dutch; text language is " +
              std::string(to_string(lang)));
        break;
      case Metric::smog:
        report.text_scores[id] = smog(report.stats);
        if (smog_unreliable(report.stats))
          report.warnings.push_back("fewer than 30 sentences: SMOG unreliable");
        break;
      case Metric::kpc_avi: {
        const auto avi = kpc_avi(report.stats, options.avi_table);
        report.text_scores[id] = avi.level;
        if (avi.above_table)
          report.warnings.push_back(
              "kpc_avi: text is above the table; reporting the maximum level");
        break;
      }
      case Metric::spache:
        report.text_scores[id] = spache(sentences, options.familiar);
        for (std::size_t i = 0; i < sentences.size(); ++i) {
          if (sentences[i].word_count() == 0) continue;
          report.sentence_scores.push_back(
              {i, spache(sentences[i], options.familiar)});
        }
        break;
    }
  }
  return report;
}

}  // namespace artist
