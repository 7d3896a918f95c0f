#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "navrl/rl/agent.hpp"

namespace navrl::harness {

using rl::EpisodeRecord;

inline constexpr int kMetricsSchemaVersion = 1;
inline constexpr std::string_view kMetricsHeader =
    "episode,steps,outcome,total_reward,mean_max_q,epsilon,sim_time_s,time_to_goal_s";

std::string format_metrics_row(const EpisodeRecord& r);
/// Throws ConfigError on a malformed row.
EpisodeRecord parse_metrics_row(std::string_view line);
/// Checks the header, then parses every row.
std::vector<EpisodeRecord> parse_metrics_csv(std::string_view text);

/// Streams rows to `<path>.partial`; finish() renames it into place.
class MetricsWriter {
 public:
  explicit MetricsWriter(std::filesystem::path path);
  void write(const EpisodeRecord& r);
  void finish();

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
};

}  // namespace navrl::harness
