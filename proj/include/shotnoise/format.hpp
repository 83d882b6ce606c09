#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shotnoise {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

/// Whole-string parses; false on any trailing garbage or overflow.
bool parse_real(std::string_view text, double &value);
bool parse_uint(std::string_view text, std::uint64_t &value);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// Writes `content` to a sibling temporary file, then renames it over
/// `path`, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

} // namespace shotnoise
