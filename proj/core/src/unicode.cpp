#include "unicode.hpp"

namespace artist::unicode {

Decoded decode(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) return {b0, 1};

  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (pos + len > text.size()) return {0xFFFD, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return cp >= 0x1E00 && cp <= 0x1EFF;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0xA0: case 0x2002: case 0x2003: case 0x2009: case 0x200A:
    case 0x202F: case 0x3000:
      return true;
    default:
      return false;
  }
}

// Latin Extended-A and the Latin Extended Additional block alternate
// upper/lower in pairs (even = upper), with a few exceptions we ignore.
static bool in_paired_block(char32_t cp) {
  return (cp >= 0x100 && cp <= 0x17F && cp != 0x138 && cp != 0x149) ||
         (cp >= 0x1E00 && cp <= 0x1EFF);
}

bool is_upper(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE) return cp != 0xD7;
  if (in_paired_block(cp)) {
    // U+0139..U+0148 and U+0179..U+017E pair odd = upper.
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E))
      return cp % 2 == 1;
    return cp % 2 == 0;
  }
  return false;
}

bool is_lower(char32_t cp) { return is_letter(cp) && !is_upper(cp); }

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (in_paired_block(cp) && is_upper(cp)) return cp + 1;
  return cp;
}

char32_t to_upper(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 32;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 32;
  if (in_paired_block(cp) && is_letter(cp) && !is_upper(cp)) return cp - 1;
  return cp;
}

char32_t vowel_base(char32_t cp) {
  cp = to_lower(cp);
  switch (cp) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return cp;
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
      return 'a';
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
      return 'e';
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
      return 'i';
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
      return 'o';
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
      return 'u';
    case 0xFD: case 0xFF:
      return 'y';
    default:
      return 0;
  }
}

bool has_diaeresis(char32_t cp) {
  cp = to_lower(cp);
  return cp == 0xE4 || cp == 0xEB || cp == 0xEF || cp == 0xF6 || cp == 0xFC ||
         cp == 0xFF;
}

std::string lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto d = decode(text, i);
    if (d.cp == 0xFFFD && d.length == 1 &&
        static_cast<unsigned char>(text[i]) >= 0x80) {
      out.push_back(text[i]);  // keep invalid bytes untouched
    } else {
      append_utf8(out, to_lower(d.cp));
    }
    i += d.length;
  }
  return out;
}

std::string capitalize_first(std::string_view text) {
  if (text.empty()) return {};
  const auto d = decode(text, 0);
  std::string out;
  append_utf8(out, to_upper(d.cp));
  out.append(text.substr(d.length));
  return out;
}

bool starts_upper(std::string_view text) {
  return !text.empty() && is_upper(decode(text, 0).cp);
}

}  // namespace artist::unicode
