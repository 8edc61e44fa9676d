#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "llg/config.hpp"
#include "llg/experiments.hpp"

namespace llg {

/// Everything one run produces, ready for disk.
struct ResultBundle {
  int schema_version = 1;
  RunConfig config;
  std::optional<StabilizationReport> stabilization;
  std::vector<SweepEntry> sweep;
};

/// Writes `summary`, `trajectory.csv`, per frequency `hysteresis_<omega>.csv`
/// and `loops.csv` into out_dir (created if needed); only files with content
/// for this run appear. Returns the list of files written, summary last.
/// Every number is written so it parses back to the identical double.
std::vector<std::filesystem::path> write_results(const ResultBundle& bundle,
                                                 const std::filesystem::path& out_dir);

std::vector<LyapunovSample> read_trajectory_csv(const std::filesystem::path& path);
std::vector<HysteresisPoint> read_hysteresis_csv(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

}  // namespace llg
