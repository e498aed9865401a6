#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gazener {

// Shortest representation that parses back to the same double; "NA" for NaN.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text) noexcept;
std::optional<long long> parse_int(std::string_view text) noexcept;

std::vector<std::string> split(std::string_view text, char separator);

// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string_view> split_whitespace(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

// Removes a trailing '\r' left by CRLF files.
void strip_cr(std::string& line) noexcept;

}  // namespace gazener
