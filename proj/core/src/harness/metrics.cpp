#include "navrl/harness/metrics.hpp"

#include <sstream>
#include <stdexcept>

#include "navrl/config_text.hpp"
#include "navrl/errors.hpp"

namespace navrl::harness {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string format_metrics_row(const EpisodeRecord& r) {
  std::ostringstream out;
  out << r.episode << ',' << r.steps << ',' << rl::to_string(r.outcome) << ','
      << format_double(r.total_reward) << ',' << format_double(r.mean_max_q) << ','
      << format_double(r.epsilon) << ',' << format_double(r.sim_time_s) << ',';
  if (r.time_to_goal_s) out << format_double(*r.time_to_goal_s);
  return out.str();
}

EpisodeRecord parse_metrics_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split_csv(line);
  if (f.size() != 8) throw ConfigError("metrics row must have 8 fields: '" + std::string(line) + "'");
  EpisodeRecord r;
  r.episode = static_cast<std::size_t>(parse_uint(f[0]));
  r.steps = static_cast<std::size_t>(parse_uint(f[1]));
  r.outcome = rl::parse_outcome(f[2]);
  r.total_reward = parse_double(f[3]);
  r.mean_max_q = parse_double(f[4]);
  r.epsilon = parse_double(f[5]);
  r.sim_time_s = parse_double(f[6]);
  if (!trim(f[7]).empty()) r.time_to_goal_s = parse_double(f[7]);
  return r;
}

std::vector<EpisodeRecord> parse_metrics_csv(std::string_view text) {
  std::vector<EpisodeRecord> rows;
  std::size_t pos = 0;
  bool header = true;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != kMetricsHeader) throw ConfigError("unexpected metrics header", line_no);
      header = false;
      continue;
    }
    if (trim(line).empty()) continue;
    try {
      rows.push_back(parse_metrics_row(line));
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  if (header) throw ConfigError("metrics file is empty");
  return rows;
}

MetricsWriter::MetricsWriter(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  partial_ = path_;
  partial_ += ".partial";
  out_.open(partial_, std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write '" + partial_.string() + "'");
  out_ << kMetricsHeader << '\n';
  out_.flush();
}

void MetricsWriter::write(const EpisodeRecord& r) {
  out_ << format_metrics_row(r) << '\n';
  out_.flush();
}

void MetricsWriter::finish() {
  if (!out_.is_open()) return;
  out_.close();
  std::filesystem::rename(partial_, path_);
}

}  // namespace navrl::harness
