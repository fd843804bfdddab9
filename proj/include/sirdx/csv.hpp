#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace sirdx {

/// Shortest exact decimal form of a double (17 significant digits), locale
/// independent. Used for every CSV numeric field so files round-trip and
/// byte-compare across runs.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

/// strtod with full input consumption; throws ParseError naming the line.
double parse_double_field(const std::string& field, std::size_t line_no);

/// Writes text to path, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

} // namespace sirdx
