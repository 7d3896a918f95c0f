#include "navrl/config_text.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "navrl/errors.hpp"

namespace navrl {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<KvEntry> parse_kv_text(std::string_view text) {
  std::vector<KvEntry> out;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("missing key", line_no);
    KvEntry e;
    e.key = section.empty() ? std::string(key) : section + "." + std::string(key);
    e.value = std::string(trim(line.substr(eq + 1)));
    e.line = line_no;
    out.push_back(std::move(e));
  }
  return out;
}

double parse_double(std::string_view value, std::size_t line) {
  value = trim(value);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(v))
    throw ConfigError("expected a finite number, got '" + std::string(value) + "'", line);
  return v;
}

std::int64_t parse_int(std::string_view value, std::size_t line) {
  value = trim(value);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("expected an integer, got '" + std::string(value) + "'", line);
  return v;
}

std::uint64_t parse_uint(std::string_view value, std::size_t line) {
  value = trim(value);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("expected a non-negative integer, got '" + std::string(value) + "'", line);
  return v;
}

bool parse_bool(std::string_view value, std::size_t line) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("expected true/false, got '" + std::string(value) + "'", line);
}

std::vector<double> parse_double_list(std::string_view value, std::size_t line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && (value[i] == ',' || value[i] == ' ' || value[i] == '\t')) ++i;
    if (i >= value.size()) break;
    std::size_t j = i;
    while (j < value.size() && value[j] != ',' && value[j] != ' ' && value[j] != '\t') ++j;
    out.push_back(parse_double(value.substr(i, j - i), line));
    i = j;
  }
  return out;
}

std::vector<std::vector<double>> parse_groups(std::string_view value, std::size_t arity,
                                              std::size_t line) {
  std::vector<std::vector<double>> out;
  while (!value.empty()) {
    const auto semi = value.find(';');
    const auto group = trim(value.substr(0, semi));
    value = semi == std::string_view::npos ? std::string_view{} : value.substr(semi + 1);
    if (group.empty()) continue;
    auto numbers = parse_double_list(group, line);
    if (numbers.size() != arity)
      throw ConfigError("expected groups of " + std::to_string(arity) + " numbers", line);
    out.push_back(std::move(numbers));
  }
  return out;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string format_double_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace navrl
