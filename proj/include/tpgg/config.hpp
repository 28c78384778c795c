#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tpgg/params.hpp"

namespace tpgg {

enum class ExperimentKind { DeltaSweep, RSweep, TimeSeriesRun, SnapshotRun, HeatmapSweep };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

/// One experiment: base parameters, the swept axes and where output goes.
/// Grid points are the cartesian product of `grid`, last axis varying fastest.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::TimeSeriesRun;
  SimParams base;
  std::vector<GridAxis> grid;
  std::filesystem::path output_dir = "out";
  unsigned threads = 0;  // 0: one per hardware thread
  std::vector<std::uint64_t> snapshot_steps{0, 100, 1000, 10000};
  std::string name;  // file stem; empty means the kind's default

  std::string label() const;
  const GridAxis* axis(std::string_view name) const;
};

/// Names a grid may sweep over.
bool is_sweepable(std::string_view key);

/// Assigns one numeric parameter by name. Throws Error(UnknownKey) for names
/// that are not sweepable and Error(InvalidArgument) for non-integral L.
void set_param(SimParams& params, std::string_view key, double value);

/// Applies one `key = value` setting. Keys are the SimParams field names plus
/// experiment, name, output_dir, threads, snapshot_steps and `grid.<param>`.
/// Every error message names the key.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Applies `key=value` where the whole assignment is one string.
void apply_assignment(ExperimentSpec& spec, std::string_view assignment);

/// Flat `key = value` lines; `#` starts a comment.
void load_config_text(ExperimentSpec& spec, std::string_view text, std::string_view origin);
void load_config_file(ExperimentSpec& spec, const std::filesystem::path& path);

/// Seeds `base.seed` from the SEED environment variable when set.
void apply_environment(ExperimentSpec& spec);

/// Grid values: `a, b, c` or an inclusive linear range `start:stop:count`.
std::vector<double> parse_grid_values(std::string_view key, std::string_view text);

/// Validates base parameters, every grid point, and the experiment-specific
/// requirements on which axes are present.
void validate(const ExperimentSpec& spec);

/// Writes every setting back as config text that reproduces `spec`.
std::string to_config_text(const ExperimentSpec& spec);

}  // namespace tpgg
