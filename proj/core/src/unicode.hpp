#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace artist::unicode {

struct Decoded {
  char32_t cp;
  std::size_t length;  // bytes consumed, >= 1
};

// Invalid sequences decode as U+FFFD consuming one byte.
Decoded decode(std::string_view text, std::size_t pos);
void append_utf8(std::string& out, char32_t cp);

// Letters are ASCII plus the Latin-1 Supplement, Latin Extended-A/B and
// Latin Extended Additional blocks.
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);

// Base vowel for vowels with diacritics (é -> e), or 0 when not a vowel.
char32_t vowel_base(char32_t cp);
bool has_diaeresis(char32_t cp);

std::string lower(std::string_view text);
std::string capitalize_first(std::string_view text);
bool starts_upper(std::string_view text);

}  // namespace artist::unicode
