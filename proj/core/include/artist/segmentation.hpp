#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace artist {

enum class Language { nl, en };

std::string_view to_string(Language lang);
std::optional<Language> parse_language(std::string_view name);

// Half-open byte range [begin, end) into a source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool operator==(const Span&) const = default;
};

enum class TokenKind { word, number, punctuation, symbol };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string surface;
  Span span;
  TokenKind kind = TokenKind::word;

  // Words and numbers both count toward word totals.
  bool is_wordlike() const noexcept {
    return kind == TokenKind::word || kind == TokenKind::number;
  }
  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string text;
  std::vector<Token> tokens;  // spans index the source document, not text
  Span span;

  std::size_t word_count() const noexcept;
};

struct TextStats {
  std::size_t n_sentences = 0;
  std::size_t n_words = 0;
  std::size_t n_syllables = 0;
  std::size_t n_polysyllables = 0;
  Language language = Language::nl;

  bool operator==(const TextStats&) const = default;
};

// Abbreviations that end in a period but do not end a sentence. Matching is
// case-insensitive on the whitespace-delimited chunk ending at the period.
class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(std::set<std::string> entries);

  // Small Dutch/English default ("bijv.", "St.", "dr.", "o.a.", "e.g.", ...).
  static const AbbreviationList& defaults();
  static AbbreviationList load(std::istream& in);

  bool contains(std::string_view chunk) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::set<std::string> entries_;  // lowercased
};

std::vector<Token> tokenize(std::string_view text, Language lang);

std::vector<Sentence> split_sentences(
    std::string_view text, Language lang,
    const AbbreviationList& abbreviations = AbbreviationList::defaults());

// Vowel-group heuristic. Throws Error(invalid_argument) when the word has no
// letters.
std::size_t count_syllables(std::string_view word, Language lang);

// Throws Error(empty_text) when text is empty after trimming.
TextStats text_stats(
    std::string_view text, Language lang,
    const AbbreviationList& abbreviations = AbbreviationList::defaults());

TextStats text_stats(const std::vector<Sentence>& sentences, Language lang);

class FrequencyList {
 public:
  FrequencyList() = default;
  FrequencyList(std::map<std::string, std::uint64_t> entries,
                std::string source_name);

  // "word<TAB>count" per line, '#' comments and blank lines skipped.
  // Throws ParseError with the 1-based line number.
  static FrequencyList load(std::istream& in, std::string source_name = "");
  static FrequencyList load_file(const std::string& path);

  std::uint64_t count(std::string_view word) const;  // case-folded lookup
  double relative(std::string_view word) const;      // count / total
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::string& source_name() const noexcept { return source_name_; }
  const std::map<std::string, std::uint64_t>& entries() const noexcept {
    return entries_;
  }

  // The n most frequent words (ties by word), e.g. as a familiar-word set.
  std::set<std::string> top(std::size_t n) const;

 private:
  std::map<std::string, std::uint64_t> entries_;
  std::uint64_t total_ = 0;
  std::string source_name_;
};

// Unicode-aware (Latin scripts) lowercase of a UTF-8 string.
std::string to_lower(std::string_view text);

}  // namespace artist
