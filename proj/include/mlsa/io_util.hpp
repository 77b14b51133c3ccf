#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mlsa::io {

/// Reads a whole file as bytes. Throws DataError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Splits on '\n', stripping a trailing '\r' and a leading UTF-8 BOM.
std::vector<std::string> lines(std::string_view contents);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Strict full-string double parse; false on trailing garbage or overflow.
bool parse_double(std::string_view s, double& out);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Splits one CSV record (no embedded newlines) honouring double quotes.
std::vector<std::string> split_csv(std::string_view line);

}  // namespace mlsa::io
