#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace emwave {

/// Shortest round-trip decimal representation (std::to_chars). This is the
/// number format used by every file the toolkit writes, so save/load is
/// value-exact and repeated runs are byte-identical.
std::string format_double(double v);

std::string format_int(long long v);

/// Strict double parse of a full token. Throws Error(parse_error) on
/// malformed or trailing input. Accepts "nan"/"inf"/"-inf".
double parse_double(std::string_view token, std::string_view context);

long long parse_int(std::string_view token, std::string_view context);

std::vector<std::string_view> split_csv_line(std::string_view line);

/// Whole-file helpers; write is binary ("\n" line ends on every platform).
void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

}  // namespace emwave
