#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phishrev::text {

/// Splits one CSV record on commas. Double-quoted fields may contain commas
/// and doubled quotes; surrounding quotes are removed.
std::vector<std::string> split_csv_line(std::string_view line);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// Shortest representation that parses back to the identical double.
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

std::vector<std::string> split(std::string_view s, char delimiter);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string read_file(const std::string& path);
/// Writes atomically enough for our purposes: truncate + write. Returns bytes written.
std::size_t write_file(const std::string& path, std::string_view contents);

}  // namespace phishrev::text
