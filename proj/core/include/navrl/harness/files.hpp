#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace navrl::harness {

/// Throws ConfigError if the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Writes `<path>.tmp` then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace navrl::harness
