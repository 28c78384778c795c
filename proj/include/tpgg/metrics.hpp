#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tpgg/lattice.hpp"
#include "tpgg/population.hpp"

namespace tpgg {

/// Cooperation fraction (and mean reputation) per recorded MC step.
struct TimeSeries {
  std::vector<std::uint64_t> steps;
  std::vector<double> rho_c;
  std::vector<double> mean_reputation;

  std::size_t size() const noexcept { return steps.size(); }
  void push(std::uint64_t step, double rho, double mean_rep);

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Strategy and reputation grids at one step, row-major `y * side + x`.
struct SnapshotFrame {
  std::uint64_t step = 0;
  int side = 0;
  std::vector<std::uint8_t> strategy_grid;
  std::vector<double> reputation_grid;

  friend bool operator==(const SnapshotFrame&, const SnapshotFrame&) = default;
};

struct EnsembleStats {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t count = 0;
};

double cooperation_fraction(const Population& pop);
double mean_reputation(const Population& pop);

/// Mean of the last `window` rho_c entries. Throws Error(InvalidArgument)
/// for a zero window or one longer than the series.
double tail_average(const TimeSeries& series, std::size_t window);

/// Throws Error(InvalidArgument) on an empty input.
EnsembleStats ensemble_mean(std::span<const double> values);

SnapshotFrame capture_snapshot(const Population& pop, const Lattice& lat, std::uint64_t step);
double cooperation_fraction(const SnapshotFrame& frame);

}  // namespace tpgg
