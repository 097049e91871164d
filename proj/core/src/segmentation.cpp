#include "artist/segmentation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>

#include "artist/error.hpp"
#include "unicode.hpp"

namespace artist {

namespace {

using unicode::decode;

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool is_word_joiner(char32_t cp) {
  return is_apostrophe(cp) || cp == '-' || cp == 0x2010;
}

bool is_punctuation(char32_t cp) {
  switch (cp) {
    case '.': case ',': case ';': case ':': case '!': case '?': case '\'':
    case '"': case '(': case ')': case '[': case ']': case '{': case '}':
    case '-': case 0x2010: case 0x2013: case 0x2014: case 0x2018:
    case 0x2019: case 0x201A: case 0x201C: case 0x201D: case 0x201E:
    case 0x2026: case 0xAB: case 0xBB: case 0xA1: case 0xBF:
      return true;
    default:
      return false;
  }
}

bool is_terminator(char32_t cp) {
  return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026;
}

bool is_closer(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == 0x2019 ||
         cp == 0x201D || cp == 0xBB;
}

bool is_opener(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == 0x2018 ||
         cp == 0x201C || cp == 0x201E || cp == 0xAB;
}

// Length in bytes of the letter run starting at pos.
std::size_t letter_run(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  while (i < text.size()) {
    const auto d = decode(text, i);
    if (!unicode::is_letter(d.cp)) break;
    i += d.length;
  }
  return i - pos;
}

std::size_t codepoints(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); i += decode(text, i).length) ++n;
  return n;
}

// Dutch clitics such as 's, 't and 'n: apostrophe plus exactly one letter.
bool starts_clitic(std::string_view text, std::size_t pos) {
  const auto d = decode(text, pos);
  if (!is_apostrophe(d.cp)) return false;
  const std::size_t run = letter_run(text, pos + d.length);
  return run > 0 && codepoints(text.substr(pos + d.length, run)) == 1;
}

std::size_t scan_word(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  if (starts_clitic(text, i)) i += decode(text, i).length;
  i += letter_run(text, i);
  while (i < text.size()) {
    const auto d = decode(text, i);
    if (!is_word_joiner(d.cp)) break;
    const std::size_t run = letter_run(text, i + d.length);
    if (run == 0) break;
    i += d.length + run;
  }
  return i;
}

constexpr std::array<std::string_view, 7> kOrdinalSuffixes = {
    "ste", "de", "e", "th", "st", "nd", "rd"};

std::size_t scan_number(std::string_view text, std::size_t pos) {
  auto digits = [&](std::size_t i) {
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    return i;
  };
  std::size_t i = digits(pos);
  while (i + 1 < text.size() && (text[i] == '.' || text[i] == ',') &&
         text[i + 1] >= '0' && text[i + 1] <= '9') {
    i = digits(i + 1);
  }
  const std::size_t run = letter_run(text, i);
  if (run > 0) {
    const std::string suffix = unicode::lower(text.substr(i, run));
    if (std::find(kOrdinalSuffixes.begin(), kOrdinalSuffixes.end(), suffix) !=
        kOrdinalSuffixes.end()) {
      i += run;
    }
  }
  return i;
}

bool is_initials(std::string_view chunk) {
  // "M.G." or "A." style initials: single letters each followed by a period.
  std::size_t i = 0;
  std::size_t letters = 0;
  while (i < chunk.size()) {
    const auto d = decode(chunk, i);
    if (!unicode::is_upper(d.cp)) return false;
    i += d.length;
    if (i >= chunk.size() || chunk[i] != '.') return false;
    ++i;
    ++letters;
  }
  return letters > 0;
}

}  // namespace

std::string_view to_string(Language lang) {
  return lang == Language::nl ? "nl" : "en";
}

std::optional<Language> parse_language(std::string_view name) {
  if (name == "nl") return Language::nl;
  if (name == "en") return Language::en;
  return std::nullopt;
}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::symbol: return "symbol";
  }
  return "symbol";
}

std::string to_lower(std::string_view text) { return unicode::lower(text); }

std::size_t Sentence::word_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(),
                    [](const Token& t) { return t.is_wordlike(); }));
}

AbbreviationList::AbbreviationList(std::set<std::string> entries) {
  for (const auto& e : entries) entries_.insert(unicode::lower(e));
}

const AbbreviationList& AbbreviationList::defaults() {
  static const AbbreviationList list({
      "bijv.", "bv.", "blz.", "ca.", "d.w.z.", "dhr.", "dr.", "e.d.", "enz.",
      "etc.", "ir.", "jl.", "jr.", "mevr.", "mr.", "mw.", "nl.", "nr.",
      "o.a.", "ong.", "prof.", "resp.", "sr.", "st.", "t.a.v.", "vgl.",
      "zgn.", "e.g.", "i.e.", "mrs.", "vs.", "no.",
  });
  return list;
}

AbbreviationList AbbreviationList::load(std::istream& in) {
  std::set<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    entries.insert(unicode::lower(line));
  }
  return AbbreviationList(std::move(entries));
}

bool AbbreviationList::contains(std::string_view chunk) const {
  return entries_.count(unicode::lower(chunk)) > 0;
}

std::vector<Token> tokenize(std::string_view text, Language /*lang*/) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto d = decode(text, i);
    if (unicode::is_space(d.cp)) {
      i += d.length;
      continue;
    }
    std::size_t end = i + d.length;
    TokenKind kind;
    if (unicode::is_letter(d.cp) || starts_clitic(text, i)) {
      end = scan_word(text, i);
      kind = TokenKind::word;
    } else if (unicode::is_digit(d.cp)) {
      end = scan_number(text, i);
      kind = TokenKind::number;
    } else {
      kind = is_punctuation(d.cp) ? TokenKind::punctuation : TokenKind::symbol;
    }
    tokens.push_back(
        Token{std::string(text.substr(i, end - i)), Span{i, end}, kind});
    i = end;
  }
  return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text, Language lang,
                                      const AbbreviationList& abbreviations) {
  // Collect boundaries (end offsets) first, then distribute tokens.
  std::vector<Span> spans;
  std::size_t start = std::string_view::npos;
  std::size_t last_nonspace_end = 0;

  std::size_t i = 0;
  while (i < text.size()) {
    const auto d = decode(text, i);
    if (unicode::is_space(d.cp)) {
      i += d.length;
      continue;
    }
    if (start == std::string_view::npos) start = i;
    if (!is_terminator(d.cp)) {
      i += d.length;
      last_nonspace_end = i;
      continue;
    }

    const std::size_t term_begin = i;
    std::size_t end = i;
    while (end < text.size() && is_terminator(decode(text, end).cp))
      end += decode(text, end).length;
    const bool single_period = end - term_begin == 1 && text[term_begin] == '.';
    while (end < text.size() && is_closer(decode(text, end).cp))
      end += decode(text, end).length;

    std::size_t next = end;
    while (next < text.size() && unicode::is_space(decode(text, next).cp))
      next += decode(text, next).length;

    bool split = false;
    if (next >= text.size()) {
      split = true;
    } else if (next > end) {
      std::size_t k = next;
      auto c = decode(text, k);
      if (is_opener(c.cp) && k + c.length < text.size()) {
        k += c.length;
        c = decode(text, k);
      }
      split = unicode::is_upper(c.cp) || unicode::is_digit(c.cp) ||
              starts_clitic(text, next);
    }

    if (split && single_period) {
      std::size_t chunk_begin = term_begin;
      while (chunk_begin > start) {
        std::size_t prev = chunk_begin - 1;
        while (prev > start &&
               (static_cast<unsigned char>(text[prev]) & 0xC0) == 0x80)
          --prev;
        if (unicode::is_space(decode(text, prev).cp)) break;
        chunk_begin = prev;
      }
      while (chunk_begin < term_begin &&
             is_opener(decode(text, chunk_begin).cp))
        chunk_begin += decode(text, chunk_begin).length;
      const auto chunk = text.substr(chunk_begin, term_begin + 1 - chunk_begin);
      if (abbreviations.contains(chunk) || is_initials(chunk)) split = false;
    }

    i = end;
    last_nonspace_end = end;
    if (split) {
      spans.push_back(Span{start, end});
      start = std::string_view::npos;
    }
  }
  if (start != std::string_view::npos)
    spans.push_back(Span{start, last_nonspace_end});

  const auto tokens = tokenize(text, lang);
  std::vector<Sentence> sentences;
  sentences.reserve(spans.size());
  std::size_t t = 0;
  for (const auto& span : spans) {
    Sentence s;
    s.span = span;
    s.text = std::string(text.substr(span.begin, span.size()));
    while (t < tokens.size() && tokens[t].span.end <= span.end) {
      s.tokens.push_back(tokens[t]);
      ++t;
    }
    sentences.push_back(std::move(s));
  }
  return sentences;
}

std::size_t count_syllables(std::string_view word, Language lang) {
  struct Letter {
    char32_t base;  // lowercase letter, vowels folded to their base
    bool vowel;
    bool trema;
  };
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < word.size();) {
    const auto d = decode(word, i);
    i += d.length;
    if (!unicode::is_letter(d.cp)) {
      letters.push_back({0, false, false});  // separator
      continue;
    }
    const char32_t base = unicode::vowel_base(d.cp);
    letters.push_back({base ? base : unicode::to_lower(d.cp), base != 0,
                       unicode::has_diaeresis(d.cp)});
  }
  if (std::none_of(letters.begin(), letters.end(),
                   [](const Letter& l) { return l.base != 0; })) {
    throw Error(ErrorCode::invalid_argument,
                "count_syllables: word has no letters: '" + std::string(word) +
                    "'");
  }

  if (lang == Language::nl) {
    // "ij" behaves as a single vowel unit.
    for (std::size_t k = 1; k < letters.size(); ++k) {
      if (letters[k].base == 'j' && letters[k - 1].base == 'i')
        letters[k].vowel = true;
    }
  } else if (!letters.empty() && letters.front().base == 'y') {
    letters.front().vowel = false;  // consonant y as in "yes"
  }

  std::size_t count = 0;
  bool in_group = false;
  for (const auto& l : letters) {
    if (l.vowel && (!in_group || l.trema)) ++count;
    in_group = l.vowel;
  }

  if (lang == Language::en && count > 1) {
    // Silent final e, except consonant + "le".
    std::size_t n = letters.size();
    while (n > 0 && letters[n - 1].base == 0) --n;
    if (n >= 2 && letters[n - 1].base == 'e' && !letters[n - 2].vowel &&
        letters[n - 2].base != 0) {
      const bool consonant_le = letters[n - 2].base == 'l' && n >= 3 &&
                                !letters[n - 3].vowel &&
                                letters[n - 3].base != 0;
      if (!consonant_le) --count;
    }
  }
  return std::max<std::size_t>(count, 1);
}

TextStats text_stats(const std::vector<Sentence>& sentences, Language lang) {
  TextStats stats;
  stats.language = lang;
  stats.n_sentences = sentences.size();
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      if (t.kind == TokenKind::number) {
        ++stats.n_words;
        ++stats.n_syllables;
      } else if (t.kind == TokenKind::word) {
        const std::size_t syl = count_syllables(t.surface, lang);
        ++stats.n_words;
        stats.n_syllables += syl;
        if (syl >= 3) ++stats.n_polysyllables;
      }
    }
  }
  return stats;
}

TextStats text_stats(std::string_view text, Language lang,
                     const AbbreviationList& abbreviations) {
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
  if (blank) throw Error(ErrorCode::empty_text, "text is empty");
  return text_stats(split_sentences(text, lang, abbreviations), lang);
}

FrequencyList::FrequencyList(std::map<std::string, std::uint64_t> entries,
                             std::string source_name)
    : source_name_(std::move(source_name)) {
  for (auto& [word, count] : entries) {
    if (count < 1)
      throw Error(ErrorCode::invalid_argument,
                  "frequency count must be >= 1 for '" + word + "'");
    entries_[unicode::lower(word)] += count;
    total_ += count;
  }
}

FrequencyList FrequencyList::load(std::istream& in, std::string source_name) {
  std::map<std::string, std::uint64_t> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 ||
        line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(line_no, "expected 'word<TAB>count'");
    const std::string_view count_text = std::string_view(line).substr(tab + 1);
    std::uint64_t count = 0;
    const auto [ptr, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size())
      throw ParseError(line_no, "invalid count '" + std::string(count_text) + "'");
    if (count < 1) throw ParseError(line_no, "count must be >= 1");
    entries[unicode::lower(std::string_view(line).substr(0, tab))] += count;
  }
  return FrequencyList(std::move(entries), std::move(source_name));
}

FrequencyList FrequencyList::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return load(in, path);
}

std::uint64_t FrequencyList::count(std::string_view word) const {
  const auto it = entries_.find(unicode::lower(word));
  return it == entries_.end() ? 0 : it->second;
}

double FrequencyList::relative(std::string_view word) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(count(word)) / static_cast<double>(total_);
}

std::set<std::string> FrequencyList::top(std::size_t n) const {
  std::vector<std::pair<std::string, std::uint64_t>> ranked(entries_.begin(),
                                                            entries_.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::set<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < n; ++i)
    out.insert(ranked[i].first);
  return out;
}

}  // namespace artist
