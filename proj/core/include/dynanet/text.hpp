#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dynanet::text {

std::string_view trim(std::string_view s);

// Splits on tabs when the line contains one (empty fields preserved),
// otherwise on runs of spaces.
std::vector<std::string_view> split_fields(std::string_view line);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Shortest representation that round-trips; "NA" for NaN.
std::string format_double(double value);

bool is_comment_or_blank(std::string_view line);

}  // namespace dynanet::text
