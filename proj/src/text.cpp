#include "mlsa/text.hpp"

namespace mlsa::text {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;  // 0 on failure
};

Decoded decode_one(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return {0, 0};
  }
  if (i + len > s.size()) return {0, 0};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0, 0};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {0, 0};
  return {cp, len};
}

}  // namespace

std::optional<std::u32string> decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  for (std::size_t i = 0; i < bytes.size();) {
    const auto d = decode_one(bytes, i);
    if (d.len == 0) return std::nullopt;
    out.push_back(d.cp);
    i += d.len;
  }
  return out;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
  for (std::size_t i = 0; i < bytes.size();) {
    const auto d = decode_one(bytes, i);
    if (d.len == 0) return i;
    i += d.len;
  }
  return std::nullopt;
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

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000: case 0xFEFF:
    // bidi marks carry no content
    case 0x200E: case 0x200F: case 0x061C:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200B;
  }
}

bool is_diacritic(char32_t cp) {
  return (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670 || cp == 0x0640 ||
         (cp >= 0x0610 && cp <= 0x061A) || (cp >= 0x06D6 && cp <= 0x06ED);
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  }
  if (cp < 0x100) {
    return cp >= 0xC0 && cp != 0xD7 && cp != 0xF7;
  }
  if (is_diacritic(cp)) return false;
  // Arabic block: letters are 0621-063F, 0641-064A, 066E-066F, 0671-06D3,
  // 06D5, 06EE-06EF, 06FA-06FC, 06FF. Everything else there is digits/punct.
  if (cp >= 0x0600 && cp <= 0x06FF) {
    return (cp >= 0x0620 && cp <= 0x063F) || (cp >= 0x0641 && cp <= 0x064A) ||
           cp == 0x066E || cp == 0x066F || (cp >= 0x0671 && cp <= 0x06D3) ||
           cp == 0x06D5 || cp == 0x06EE || cp == 0x06EF ||
           (cp >= 0x06FA && cp <= 0x06FC) || cp == 0x06FF;
  }
  // Arabic presentation forms carry letters (minus their few punctuation cells).
  if (cp >= 0xFB50 && cp <= 0xFDFF) return cp != 0xFD3E && cp != 0xFD3F;
  if (cp >= 0xFE70 && cp <= 0xFEFC) return true;
  // General punctuation, symbols, arrows, math, box drawing, dingbats, CJK
  // punctuation, fullwidth ASCII punctuation and emoji.
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF20) return false;
  if (cp >= 0x1F000) return false;
  // Combining diacritical marks are not letters on their own.
  if (cp >= 0x0300 && cp <= 0x036F) return false;
  return true;
}

std::string remove_diacritics(std::string_view utf8) {
  auto cps = decode_utf8(utf8);
  if (!cps) return std::string(utf8);
  std::string out;
  out.reserve(utf8.size());
  for (char32_t cp : *cps) {
    if (!is_diacritic(cp)) append_utf8(out, cp);
  }
  return out;
}

std::string trim_non_letters(std::string_view utf8) {
  auto cps = decode_utf8(utf8);
  if (!cps) return std::string(utf8);
  std::size_t b = 0;
  std::size_t e = cps->size();
  while (b < e && !is_letter((*cps)[b])) ++b;
  while (e > b && !is_letter((*cps)[e - 1])) --e;
  return encode_utf8(std::u32string_view(*cps).substr(b, e - b));
}

std::string lookup_key(std::string_view surface) {
  return trim_non_letters(remove_diacritics(surface));
}

std::size_t length(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) n += (c & 0xC0) != 0x80;
  return n;
}

bool starts_with(std::u32string_view s, std::u32string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::u32string_view s, std::u32string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace mlsa::text
