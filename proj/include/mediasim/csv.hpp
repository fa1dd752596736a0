#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mediasim::csv {

// Minimal RFC 4180 field handling: quoted fields may contain commas and
// doubled quotes. Records never span lines.
std::vector<std::string> split_row(std::string_view line);
std::string quote(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

std::string trim(std::string_view s);

// Shortest representation with `digits` significant digits.
std::string format_real(double value, int digits = 9);

}  // namespace mediasim::csv
