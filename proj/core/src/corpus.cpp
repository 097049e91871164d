#include "artist/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include "artist/error.hpp"
#include "artist/serialization.hpp"

namespace artist {

namespace {

bool is_blank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

// Alignment as read from disk, before it is resolved against its topic.
struct AlignmentRecord {
  std::size_t line_no;
  std::string topic_id;
  Level complex_level;
  Level simple_level;
  std::size_t complex_idx;
  std::size_t simple_idx;
};

std::string line_string(const json& j, const char* name, std::size_t line_no) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_string())
    throw ParseError(line_no, std::string("missing string field \"") + name + "\"");
  return it->get<std::string>();
}

Level line_level(const json& j, const char* name, std::size_t line_no) {
  const auto level = parse_level(line_string(j, name, line_no));
  if (!level) throw ParseError(line_no, std::string("unknown level in \"") + name + "\"");
  return *level;
}

std::size_t line_index(const json& j, const char* name, std::size_t line_no) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_number_unsigned())
    throw ParseError(line_no,
                     std::string("field \"") + name + "\" must be a non-negative integer");
  return it->get<std::size_t>();
}

CorpusTopic parse_topic(const json& j, std::size_t line_no) {
  CorpusTopic topic;
  topic.topic_id = line_string(j, "topic_id", line_no);
  if (topic.topic_id.empty()) throw ParseError(line_no, "empty topic_id");
  topic.title = line_string(j, "title", line_no);
  const auto levels = j.find("levels");
  if (levels == j.end() || !levels->is_object())
    throw ParseError(line_no, "\"levels\" must be an object");
  for (const auto& item : levels->items()) {
    const auto level = parse_level(item.key());
    if (!level) throw ParseError(line_no, "unknown level '" + item.key() + "'");
    if (!item.value().is_array())
      throw ParseError(line_no, "level '" + item.key() + "' must be a list");
    std::vector<std::string> paragraphs;
    bool any_text = false;
    for (const auto& p : item.value()) {
      if (!p.is_string()) throw ParseError(line_no, "paragraphs must be strings");
      paragraphs.push_back(p.get<std::string>());
      any_text = any_text || !is_blank(paragraphs.back());
    }
    if (!any_text)
      throw ParseError(line_no,
                       "level '" + item.key() + "' needs a non-empty paragraph");
    topic.levels[*level] = std::move(paragraphs);
  }
  return topic;
}

AlignmentRecord parse_alignment(const json& j, std::size_t line_no) {
  AlignmentRecord a{line_no,
                    line_string(j, "topic_id", line_no),
                    line_level(j, "complex_level", line_no),
                    line_level(j, "simple_level", line_no),
                    line_index(j, "complex_idx", line_no),
                    line_index(j, "simple_idx", line_no)};
  if (a.complex_level == a.simple_level)
    throw ParseError(line_no, "complex_level and simple_level must differ");
  return a;
}

const std::string& paragraph(const CorpusTopic& topic, Level level, std::size_t idx,
                             std::size_t line_no) {
  const auto it = topic.levels.find(level);
  if (it == topic.levels.end())
    throw Error(ErrorCode::index_out_of_range,
                "line " + std::to_string(line_no) + ": topic " + topic.topic_id +
                    " has no level " + std::string(to_string(level)));
  if (idx >= it->second.size())
    throw Error(ErrorCode::index_out_of_range,
                "line " + std::to_string(line_no) + ": paragraph " +
                    std::to_string(idx) + " out of range for " + topic.topic_id + "/" +
                    std::string(to_string(level)));
  return it->second[idx];
}

json parse_line(const std::string& line, std::size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError(line_no, "invalid JSON");
  if (!j.is_object()) throw ParseError(line_no, "record must be a JSON object");
  return j;
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::primary: return "primary";
    case Level::lower_secondary: return "lower_secondary";
    case Level::upper_secondary: return "upper_secondary";
  }
  return "primary";
}

std::optional<Level> parse_level(std::string_view s) {
  if (s == "primary") return Level::primary;
  if (s == "lower_secondary") return Level::lower_secondary;
  if (s == "upper_secondary") return Level::upper_secondary;
  return std::nullopt;
}

bool pair_order(const AlignedPair& a, const AlignedPair& b) {
  return std::tie(a.topic_id, a.complex_level, a.simple_level,
                  a.complex_paragraph_idx, a.simple_paragraph_idx) <
         std::tie(b.topic_id, b.complex_level, b.simple_level,
                  b.complex_paragraph_idx, b.simple_paragraph_idx);
}

const CorpusTopic* Corpus::find(std::string_view topic_id) const {
  const auto it = std::find_if(topics.begin(), topics.end(),
                               [&](const CorpusTopic& t) { return t.topic_id == topic_id; });
  return it == topics.end() ? nullptr : &*it;
}

Corpus load_corpus(std::istream& in) {
  Corpus corpus;
  std::vector<AlignmentRecord> alignments;
  std::set<std::string> ids;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const json j = parse_line(line, line_no);
    const std::string type = line_string(j, "record_type", line_no);
    if (type == "topic") {
      auto topic = parse_topic(j, line_no);
      if (!ids.insert(topic.topic_id).second)
        throw Error(ErrorCode::duplicate_topic,
                    "line " + std::to_string(line_no) + ": duplicate topic_id " +
                        topic.topic_id);
      corpus.topics.push_back(std::move(topic));
    } else if (type == "alignment") {
      alignments.push_back(parse_alignment(j, line_no));
    } else {
      throw ParseError(line_no, "unknown record_type '" + type + "'");
    }
  }

  for (const auto& a : alignments) {
    const CorpusTopic* topic = corpus.find(a.topic_id);
    if (!topic)
      throw Error(ErrorCode::unknown_topic, "line " + std::to_string(a.line_no) +
                                                ": unknown topic " + a.topic_id);
    corpus.pairs.push_back(
        {a.topic_id, a.complex_level, a.simple_level, a.complex_idx, a.simple_idx,
         paragraph(*topic, a.complex_level, a.complex_idx, a.line_no),
         paragraph(*topic, a.simple_level, a.simple_idx, a.line_no)});
  }
  std::sort(corpus.pairs.begin(), corpus.pairs.end(), pair_order);
  corpus.pairs.erase(std::unique(corpus.pairs.begin(), corpus.pairs.end()),
                     corpus.pairs.end());
  return corpus;
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return load_corpus(in);
}

void save_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& t : corpus.topics) {
    json levels = json::object();
    for (const auto& [level, paragraphs] : t.levels)
      levels[std::string(to_string(level))] = paragraphs;
    const json j = {{"record_type", "topic"},
                    {"topic_id", t.topic_id},
                    {"title", t.title},
                    {"levels", std::move(levels)}};
    out << j.dump() << '\n';
  }
  for (const auto& p : corpus.pairs) {
    const json j = {{"record_type", "alignment"},
                    {"topic_id", p.topic_id},
                    {"complex_level", to_string(p.complex_level)},
                    {"simple_level", to_string(p.simple_level)},
                    {"complex_idx", p.complex_paragraph_idx},
                    {"simple_idx", p.simple_paragraph_idx}};
    out << j.dump() << '\n';
  }
}

std::vector<AlignedPair> get_pairs(const Corpus& corpus, Level complex_level,
                                   Level simple_level) {
  std::vector<AlignedPair> out;
  for (const auto& p : corpus.pairs)
    if (p.complex_level == complex_level && p.simple_level == simple_level)
      out.push_back(p);
  std::sort(out.begin(), out.end(), pair_order);
  return out;
}

// ---------------------------------------------------------------- results

void write_eval_results(std::ostream& out, const EvalResults& results) {
  for (const auto& row : results.rows) {
    json j = row;
    j["record_type"] = "eval_row";
    out << j.dump() << '\n';
  }
  for (const auto& r : results.ratings) {
    json j = r;
    j["record_type"] = "rating";
    out << j.dump() << '\n';
  }
}

void save_eval_results(const std::string& path, const std::vector<CorpusEvalRow>& rows,
                       const std::vector<RatingRecord>& ratings) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
  write_eval_results(out, EvalResults{rows, ratings});
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path);
}

EvalResults load_eval_results(std::istream& in) {
  EvalResults results;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const json j = parse_line(line, line_no);
    const std::string type = line_string(j, "record_type", line_no);
    try {
      if (type == "eval_row") {
        results.rows.push_back(j.get<CorpusEvalRow>());
      } else if (type == "rating") {
        results.ratings.push_back(j.get<RatingRecord>());
      } else {
        throw ParseError(line_no, "unknown record_type '" + type + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return results;
}

EvalResults load_eval_results_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return load_eval_results(in);
}

void append_rating(const std::string& path, const RatingRecord& rating) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
  write_eval_results(out, EvalResults{{}, {rating}});
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path);
}

}  // namespace artist
