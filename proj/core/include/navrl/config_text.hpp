#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace navrl {

/// One `key = value` line. `key` is qualified by the enclosing `[section]`
/// as `section.key`.
struct KvEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Parses INI-style key=value text: `[section]` headers, `#` comments, blank lines.
/// Throws ConfigError with the line number on malformed lines.
std::vector<KvEntry> parse_kv_text(std::string_view text);

double parse_double(std::string_view value, std::size_t line = 0);
std::int64_t parse_int(std::string_view value, std::size_t line = 0);
std::uint64_t parse_uint(std::string_view value, std::size_t line = 0);
bool parse_bool(std::string_view value, std::size_t line = 0);
/// Comma- or whitespace-separated numbers.
std::vector<double> parse_double_list(std::string_view value, std::size_t line = 0);
/// Semicolon-separated groups of numbers, each of exactly `arity` entries.
std::vector<std::vector<double>> parse_groups(std::string_view value, std::size_t arity,
                                              std::size_t line = 0);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
std::string format_double_list(const std::vector<double>& values);

std::string_view trim(std::string_view s);

}  // namespace navrl
