#pragma once

// Small text and file helpers shared by the file-format readers and writers.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace truelearn {

std::string_view trim(std::string_view s);
std::string_view strip_bom(std::string_view s);
std::string to_lower(std::string_view s);

/// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_fields(std::string_view text, char sep);

/// RFC 4180-style row split: honours double-quoted fields with "" escapes.
std::vector<std::string> split_csv_row(std::string_view row);
std::string csv_escape(std::string_view field);

bool parse_integer(std::string_view s, std::int64_t& out);
bool parse_real(std::string_view s, double& out);

/// Shortest representation that round-trips to the same double.
std::string format_real(double x);

/// Throws DataError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace truelearn
