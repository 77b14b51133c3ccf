#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 and character-class helpers for Arabic/Latin text.
namespace mlsa::text {

/// Decodes UTF-8 into code points; std::nullopt on any malformed sequence
/// (overlongs, surrogates and values above U+10FFFF are rejected).
std::optional<std::u32string> decode_utf8(std::string_view bytes);

/// Byte offset of the first invalid sequence, or std::nullopt if valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
/// Arabic harakat, tanween, shadda, sukun, superscript alef and tatweel.
bool is_diacritic(char32_t cp);
/// Letters of any script we recognise (Latin, Arabic, and other alphabetic
/// blocks). Digits, punctuation, symbols and diacritics are not letters.
bool is_letter(char32_t cp);

/// Removes Arabic diacritics and tatweel.
std::string remove_diacritics(std::string_view utf8);

/// Drops leading and trailing non-letter code points ("«فيلم»," -> "فيلم").
std::string trim_non_letters(std::string_view utf8);

/// Canonical form used for every lexical lookup: diacritics removed, then
/// non-letter edges trimmed.
std::string lookup_key(std::string_view surface);

std::size_t length(std::string_view utf8);
bool starts_with(std::u32string_view s, std::u32string_view prefix);
bool ends_with(std::u32string_view s, std::u32string_view suffix);

/// Splits on ASCII '\t'; no quoting.
std::vector<std::string_view> split_tabs(std::string_view line);

}  // namespace mlsa::text
