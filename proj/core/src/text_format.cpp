#include "pca/text_format.hpp"

#include <array>
#include <charconv>
#include <system_error>

#include "pca/errors.hpp"

namespace pca::text {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("cannot format floating-point value");
  return std::string(buf.data(), end);
}

namespace {

template <typename T>
T parse_number(std::string_view s, const char* what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  T value{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

double parse_double(std::string_view s) { return parse_number<double>(s, "a number"); }
std::int64_t parse_int(std::string_view s) { return parse_number<std::int64_t>(s, "an integer"); }
std::uint64_t parse_uint(std::string_view s) {
  return parse_number<std::uint64_t>(s, "a non-negative integer");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find_first_of(delims, pos);
    const auto piece = s.substr(pos, next == std::string_view::npos ? s.size() - pos : next - pos);
    if (!piece.empty()) out.push_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace pca::text
