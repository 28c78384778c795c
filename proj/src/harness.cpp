#include "tpgg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "tpgg/error.hpp"
#include "tpgg/evolution.hpp"
#include "tpgg/rng.hpp"

namespace tpgg {

namespace fs = std::filesystem;

std::vector<GridPoint> expand_grid(const std::vector<GridAxis>& grid) {
  std::size_t total = 1;
  for (const auto& a : grid) total *= a.values.size();
  std::vector<GridPoint> out;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    GridPoint p;
    p.index = idx;
    p.values.resize(grid.size());
    std::size_t rem = idx;
    for (std::size_t k = grid.size(); k-- > 0;) {
      const auto n = grid[k].values.size();
      p.values[k] = grid[k].values[rem % n];
      rem /= n;
    }
    out.push_back(std::move(p));
  }
  return out;
}

SimParams params_at(const ExperimentSpec& spec, const GridPoint& point) {
  SimParams p = spec.base;
  for (std::size_t k = 0; k < spec.grid.size(); ++k) set_param(p, spec.grid[k].name, point.values[k]);
  return p;
}

ExperimentSpec with_default_axes(ExperimentSpec spec) {
  auto add = [&](const char* name, std::vector<double> values) {
    if (spec.axis(name) == nullptr) spec.grid.push_back({name, std::move(values)});
  };
  auto linspace = [](double a, double b, int n) {
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
    return v;
  };
  switch (spec.kind) {
    case ExperimentKind::DeltaSweep:
      add("R0", {0, 4, 8, 12, 16});
      add("delta", linspace(0, 1, 21));
      break;
    case ExperimentKind::RSweep:
      add("b", {0, 0.25, 0.5, 0.75});
      add("r", linspace(1, 5, 41));
      break;
    case ExperimentKind::HeatmapSweep:
      add("r", linspace(1, 5, 21));
      add("b", linspace(0, 1, 21));
      break;
    case ExperimentKind::SnapshotRun:
      add("R0", {0, 4, 12, 16});
      break;
    case ExperimentKind::TimeSeriesRun:
      break;
  }
  return spec;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

namespace {

using LatticeCache = std::map<std::pair<int, Neighborhood>, std::shared_ptr<const Lattice>>;

LatticeCache lattices_for(const std::vector<SimParams>& params) {
  LatticeCache cache;
  for (const auto& p : params) {
    auto& slot = cache[{p.L, p.neighborhood}];
    if (!slot) slot = std::make_shared<const Lattice>(p.L, p.neighborhood);
  }
  return cache;
}

/// `name=value ` for every axis; empty without axes.
std::string point_label(const ExperimentSpec& spec, const GridPoint& point) {
  std::string out;
  for (std::size_t k = 0; k < spec.grid.size(); ++k) {
    out += spec.grid[k].name + "=" + format_number(point.values[k]) + " ";
  }
  return out;
}

std::string progress_prefix(const ExperimentSpec& spec, std::size_t index, std::size_t total) {
  return spec.label() + " [" + std::to_string(index + 1) + "/" + std::to_string(total) + "] ";
}

/// Emits progress lines in grid order as points finish.
class OrderedReporter {
 public:
  OrderedReporter(std::size_t points, int per_point, const ProgressFn& progress,
                  std::function<std::string(std::size_t)> line)
      : remaining_(points), progress_(progress), line_(std::move(line)) {
    std::fill(remaining_.begin(), remaining_.end(), per_point);
  }

  void task_done(std::size_t point) {
    std::lock_guard lock(mutex_);
    --remaining_[point];
    while (next_ < remaining_.size() && remaining_[next_] == 0) {
      if (progress_) progress_(line_(next_));
      ++next_;
    }
  }

 private:
  std::mutex mutex_;
  std::vector<int> remaining_;
  std::size_t next_ = 0;
  const ProgressFn& progress_;
  std::function<std::string(std::size_t)> line_;
};

fs::path output_path(const ExperimentSpec& spec, const std::string& file) {
  return spec.output_dir / file;
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec, const ProgressFn& progress) {
  validate(spec);
  const auto points = expand_grid(spec.grid);
  const auto replicas = std::size_t(spec.base.replicas);
  std::vector<SimParams> point_params;
  point_params.reserve(points.size());
  for (const auto& pt : points) {
    SimParams p = params_at(spec, pt);
    // Absorbed states are frozen, so early exit leaves every tail average unchanged.
    p.early_exit = true;
    point_params.push_back(p);
  }
  const auto lattices = lattices_for(point_params);

  SweepResult result;
  for (const auto& a : spec.grid) result.param_names.push_back(a.name);
  result.rows.resize(points.size());
  std::vector<double> tails(points.size() * replicas);

  OrderedReporter reporter(points.size(), int(replicas), progress, [&](std::size_t i) {
    const auto& row = result.rows[i];
    return progress_prefix(spec, i, points.size()) + point_label(spec, points[i]) +
           "rho_c=" + format_number(row.mean) + " sd=" + format_number(row.sd) +
           " replicas=" + std::to_string(row.replicas);
  });

  std::vector<std::atomic<int>> done(points.size());
  parallel_for(points.size() * replicas, spec.threads, [&](std::size_t task) {
    const std::size_t pi = task / replicas;
    const std::size_t rep = task % replicas;
    SimParams p = point_params[pi];
    p.seed = replica_seed(spec.base.seed, std::uint32_t(pi), std::uint32_t(rep));
    const RunResult res = run(p, {}, lattices.at({p.L, p.neighborhood}));
    tails[task] = tail_average(res.series, std::size_t(p.tail_window));
    if (done[pi].fetch_add(1) + 1 == int(replicas)) {
      const auto stats =
          ensemble_mean(std::span<const double>(tails.data() + pi * replicas, replicas));
      result.rows[pi] = SweepRow{points[pi].values, stats.mean, stats.sd, int(replicas)};
    }
    reporter.task_done(pi);
  });

  if (!spec.output_dir.empty()) write_sweep_csv(output_path(spec, spec.label() + ".csv"), result);
  return result;
}

namespace {

SweepResult checked_sweep(ExperimentSpec spec, ExperimentKind kind, const ProgressFn& progress) {
  spec.kind = kind;
  return run_sweep(with_default_axes(std::move(spec)), progress);
}

}  // namespace

SweepResult run_delta_sweep(const ExperimentSpec& spec, const ProgressFn& progress) {
  return checked_sweep(spec, ExperimentKind::DeltaSweep, progress);
}

SweepResult run_r_sweep(const ExperimentSpec& spec, const ProgressFn& progress) {
  return checked_sweep(spec, ExperimentKind::RSweep, progress);
}

SweepResult run_heatmap(const ExperimentSpec& spec, const ProgressFn& progress) {
  return checked_sweep(spec, ExperimentKind::HeatmapSweep, progress);
}

std::vector<TimeSeriesOutput> run_time_series(const ExperimentSpec& spec,
                                              const ProgressFn& progress) {
  validate(spec);
  const auto points = expand_grid(spec.grid);
  const auto replicas = std::size_t(spec.base.replicas);
  std::vector<SimParams> point_params;
  for (const auto& pt : points) {
    SimParams p = params_at(spec, pt);
    p.early_exit = false;
    point_params.push_back(p);
  }
  const auto lattices = lattices_for(point_params);

  std::vector<TimeSeriesOutput> out(points.size());
  std::vector<TimeSeries> runs(points.size() * replicas);
  std::vector<std::atomic<int>> done(points.size());

  auto finish_point = [&](std::size_t pi) {
    const SimParams& p = point_params[pi];
    TimeSeries mean;
    const auto n = runs[pi * replicas].size();
    for (std::size_t t = 0; t < n; ++t) {
      double rho = 0.0;
      double rep = 0.0;
      for (std::size_t k = 0; k < replicas; ++k) {
        rho += runs[pi * replicas + k].rho_c[t];
        rep += runs[pi * replicas + k].mean_reputation[t];
      }
      mean.push(runs[pi * replicas].steps[t], rho / double(replicas), rep / double(replicas));
    }
    for (std::size_t k = 0; k < replicas; ++k) runs[pi * replicas + k] = {};
    auto& o = out[pi];
    o.params = points[pi].values;
    o.tail_mean = tail_average(mean, std::size_t(p.tail_window));
    o.series = std::move(mean);
  };

  OrderedReporter reporter(points.size(), int(replicas), progress, [&](std::size_t i) {
    return progress_prefix(spec, i, points.size()) + point_label(spec, points[i]) +
           "final_rho_c=" + format_number(out[i].series.rho_c.back()) +
           " tail_rho_c=" + format_number(out[i].tail_mean) +
           " replicas=" + std::to_string(replicas);
  });

  parallel_for(points.size() * replicas, spec.threads, [&](std::size_t task) {
    const std::size_t pi = task / replicas;
    const std::size_t rep = task % replicas;
    SimParams p = point_params[pi];
    p.seed = replica_seed(spec.base.seed, std::uint32_t(pi), std::uint32_t(rep));
    runs[task] = run(p, {}, lattices.at({p.L, p.neighborhood})).series;
    if (done[pi].fetch_add(1) + 1 == int(replicas)) finish_point(pi);
    reporter.task_done(pi);
  });

  if (!spec.output_dir.empty()) {
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
      std::string file = spec.label();
      for (std::size_t k = 0; k < spec.grid.size(); ++k) {
        file += "_" + spec.grid[k].name + "=" + format_number(points[pi].values[k]);
      }
      out[pi].path = output_path(spec, file + ".csv");
      write_file_atomic(out[pi].path, time_series_csv(out[pi].series));
    }
  }
  return out;
}

std::vector<SnapshotOutput> run_snapshots(const ExperimentSpec& spec, const ProgressFn& progress) {
  validate(spec);
  const auto points = expand_grid(spec.grid);
  std::vector<SimParams> point_params;
  for (const auto& pt : points) point_params.push_back(params_at(spec, pt));
  const auto lattices = lattices_for(point_params);

  std::vector<SnapshotOutput> out(points.size());
  OrderedReporter reporter(points.size(), 1, progress, [&](std::size_t i) {
    const auto& frame = out[i].frames.back();
    return progress_prefix(spec, i, points.size()) + "R0=" + format_number(out[i].R0) +
           " seed=" + std::to_string(out[i].seed) + " frames=" +
           std::to_string(out[i].frames.size()) + " final_rho_c=" +
           format_number(cooperation_fraction(frame));
  });

  parallel_for(points.size(), spec.threads, [&](std::size_t pi) {
    SimParams p = point_params[pi];
    p.seed = replica_seed(spec.base.seed, std::uint32_t(pi), 0);
    RunObserverHooks hooks;
    for (auto s : spec.snapshot_steps) {
      if (s <= p.steps) hooks.snapshot_steps.push_back(s);
    }
    hooks.snapshot_steps.push_back(p.steps);
    auto& o = out[pi];
    o.R0 = p.R0;
    o.seed = p.seed;
    hooks.on_snapshot = [&o](const SnapshotFrame& f) { o.frames.push_back(f); };
    run(p, hooks, lattices.at({p.L, p.neighborhood}));
    reporter.task_done(pi);
  });

  if (!spec.output_dir.empty()) {
    for (auto& o : out) {
      for (const auto& frame : o.frames) {
        const auto [strategy_name, reputation_name] =
            snapshot_file_names(spec.label(), o.R0, frame.step);
        o.files.push_back(output_path(spec, strategy_name));
        write_file_atomic(o.files.back(), strategy_grid_text(frame));
        o.files.push_back(output_path(spec, reputation_name));
        write_file_atomic(o.files.back(), reputation_grid_text(frame));
      }
    }
  }
  return out;
}

std::size_t run_experiment(const ExperimentSpec& raw, const ProgressFn& progress) {
  const ExperimentSpec spec = with_default_axes(raw);
  switch (spec.kind) {
    case ExperimentKind::DeltaSweep:
    case ExperimentKind::RSweep:
    case ExperimentKind::HeatmapSweep:
      return run_sweep(spec, progress).rows.size();
    case ExperimentKind::TimeSeriesRun:
      return run_time_series(spec, progress).size();
    case ExperimentKind::SnapshotRun:
      return run_snapshots(spec, progress).size();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment kind");
}

}  // namespace tpgg
