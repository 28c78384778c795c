#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "tpgg/config.hpp"
#include "tpgg/io.hpp"
#include "tpgg/metrics.hpp"

namespace tpgg {

/// Receives one summary line per finished grid point, in grid order.
using ProgressFn = std::function<void(const std::string&)>;

struct GridPoint {
  std::size_t index = 0;
  std::vector<double> values;  // aligned with ExperimentSpec::grid
};

/// Cartesian product of the axes, last axis varying fastest. No axes yields
/// a single point with no values.
std::vector<GridPoint> expand_grid(const std::vector<GridAxis>& grid);

/// Base parameters with one grid point applied.
SimParams params_at(const ExperimentSpec& spec, const GridPoint& point);

/// Fills in the axes a figure-style experiment sweeps when the config leaves
/// them out (e.g. R0 in {0,4,8,12,16} for a delta sweep, a 21x21 r-b plane
/// for a heatmap). Axes that are present are kept as given.
ExperimentSpec with_default_axes(ExperimentSpec spec);

/// Runs `count` tasks on up to `threads` workers (0: hardware concurrency).
/// The first exception thrown by a task is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

/// Every grid point gets `replicas` runs seeded by replica_seed; each run is
/// reduced to its tail average, then averaged over replicas. Writes
/// `<output_dir>/<label>.csv` unless output_dir is empty. Output does not
/// depend on the thread count.
SweepResult run_sweep(const ExperimentSpec& spec, const ProgressFn& progress = {});

/// Checked wrappers; each requires its kind's axes (after defaults).
SweepResult run_delta_sweep(const ExperimentSpec& spec, const ProgressFn& progress = {});
SweepResult run_r_sweep(const ExperimentSpec& spec, const ProgressFn& progress = {});
SweepResult run_heatmap(const ExperimentSpec& spec, const ProgressFn& progress = {});

struct TimeSeriesOutput {
  std::vector<double> params;  // grid point values
  TimeSeries series;           // replica mean at each step
  double tail_mean = 0.0;      // tail average of `series`
  std::filesystem::path path;  // empty when nothing was written
};

/// Replica-averaged rho_C(t) and mean reputation per grid point, written as
/// `<label>_<axis>=<value>....csv`. Early exit is forced off.
std::vector<TimeSeriesOutput> run_time_series(const ExperimentSpec& spec,
                                              const ProgressFn& progress = {});

struct SnapshotOutput {
  double R0 = 0.0;
  std::uint64_t seed = 0;
  std::vector<SnapshotFrame> frames;  // ordered by step
  std::vector<std::filesystem::path> files;
};

/// One run per R0 value, frames at `snapshot_steps` (plus the final step),
/// dumped as .grid files.
std::vector<SnapshotOutput> run_snapshots(const ExperimentSpec& spec,
                                          const ProgressFn& progress = {});

/// Dispatches on `spec.kind`. Returns the number of grid points processed.
std::size_t run_experiment(const ExperimentSpec& spec, const ProgressFn& progress = {});

}  // namespace tpgg
