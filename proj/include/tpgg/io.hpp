#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpgg/metrics.hpp"

namespace tpgg {

struct SweepRow {
  std::vector<double> params;  // one value per SweepResult::param_names entry
  double mean = 0.0;
  double sd = 0.0;
  int replicas = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<std::string> param_names;
  std::vector<SweepRow> rows;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Six significant digits, `%.6g`.
std::string format_number(double v);

/// Writes to a sibling temp file and renames it over `path`.
/// Throws Error(Io) naming the path on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Sweep CSV: `p1,p2,...,rho_c_mean,rho_c_sd,replicas`.
std::string sweep_csv(const SweepResult& result);
SweepResult parse_sweep_csv(std::string_view text);
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result);
SweepResult read_sweep_csv(const std::filesystem::path& path);

// Time series CSV: `step,rho_c,mean_reputation`.
std::string time_series_csv(const TimeSeries& series);
TimeSeries parse_time_series_csv(std::string_view text);

// Snapshot grids: one lattice row per line, space separated.
std::string strategy_grid_text(const SnapshotFrame& frame);
std::string reputation_grid_text(const SnapshotFrame& frame);

/// `{experiment}_{R0}_{step}.strategy.grid` and `.reputation.grid`.
std::pair<std::string, std::string> snapshot_file_names(std::string_view experiment, double R0,
                                                        std::uint64_t step);

/// Parses the two grid files of a frame; throws Error(Parse) on ragged or
/// non-square grids and out-of-range values.
SnapshotFrame parse_snapshot(std::string_view strategy_text, std::string_view reputation_text,
                             std::uint64_t step);

}  // namespace tpgg
