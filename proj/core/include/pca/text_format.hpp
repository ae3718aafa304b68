#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pca::text {

/// Shortest decimal representation that round-trips exactly.
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] double parse_double(std::string_view s);
[[nodiscard]] std::int64_t parse_int(std::string_view s);
[[nodiscard]] std::uint64_t parse_uint(std::string_view s);

[[nodiscard]] std::string_view trim(std::string_view s);
/// Splits on any of the delimiter characters, dropping empty fields.
[[nodiscard]] std::vector<std::string_view> split(std::string_view s, std::string_view delims);

}  // namespace pca::text
