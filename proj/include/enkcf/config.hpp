#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "enkcf/tracker.hpp"

namespace enkcf {

/// Everything a configuration file can set.
struct RunSettings {
  SchedulerConfig scheduler;
  std::uint64_t seed = 42;
  /// Path to the 32768 x 11 color-naming table; empty when unset.
  std::string cn_table;

  bool operator==(const RunSettings&) const = default;
};

/// Keys in the order config dumps list them.
const std::vector<std::string>& config_keys();

/// Flat "key = value" document with '#' comments, one line per key.
std::string dump_config(const RunSettings& settings);

/// Applies the keys present in `text` on top of `settings`. Unknown keys,
/// duplicate keys and malformed values throw FormatError naming the line.
void apply_config(std::string_view text, RunSettings& settings);

/// Sets a single key, e.g. from a command-line override.
void set_config_value(RunSettings& settings, std::string_view key, std::string_view value);

RunSettings load_config(const std::filesystem::path& path);

/// Short hex digest of the dumped configuration.
std::string config_digest(const RunSettings& settings);

/// Shortest decimal that reads back to exactly `value`, always with at
/// least `min_decimals` digits after the point.
std::string format_real(double value, int min_decimals = 1);

}  // namespace enkcf
