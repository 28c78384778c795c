#include "tpgg/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "tpgg/error.hpp"

namespace tpgg {

void TimeSeries::push(std::uint64_t step, double rho, double mean_rep) {
  steps.push_back(step);
  rho_c.push_back(rho);
  mean_reputation.push_back(mean_rep);
}

double cooperation_fraction(const Population& pop) {
  if (pop.size() == 0) return 0.0;
  std::size_t c = 0;
  for (auto s : pop.strategies) c += s == Strategy::Cooperate ? 1 : 0;
  return double(c) / double(pop.size());
}

double mean_reputation(const Population& pop) {
  if (pop.size() == 0) return 0.0;
  return std::accumulate(pop.reputations.begin(), pop.reputations.end(), 0.0) /
         double(pop.size());
}

double tail_average(const TimeSeries& series, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::InvalidArgument, "tail window must be >= 1");
  if (window > series.size()) {
    throw Error(ErrorCode::InvalidArgument, "tail window " + std::to_string(window) +
                                                " larger than series length " +
                                                std::to_string(series.size()));
  }
  const auto first = series.rho_c.end() - std::ptrdiff_t(window);
  return std::accumulate(first, series.rho_c.end(), 0.0) / double(window);
}

EnsembleStats ensemble_mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "ensemble_mean of empty list");
  EnsembleStats out;
  out.count = values.size();
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / double(values.size() - 1));
  }
  return out;
}

SnapshotFrame capture_snapshot(const Population& pop, const Lattice& lat, std::uint64_t step) {
  if (pop.size() != lat.size()) {
    throw Error(ErrorCode::InvalidSize, "population size " + std::to_string(pop.size()) +
                                            " does not match lattice size " +
                                            std::to_string(lat.size()));
  }
  SnapshotFrame frame;
  frame.step = step;
  frame.side = lat.side();
  frame.strategy_grid.reserve(pop.size());
  for (auto s : pop.strategies) frame.strategy_grid.push_back(std::uint8_t(s));
  frame.reputation_grid = pop.reputations;
  return frame;
}

double cooperation_fraction(const SnapshotFrame& frame) {
  if (frame.strategy_grid.empty()) return 0.0;
  std::size_t c = 0;
  for (auto s : frame.strategy_grid) c += s;
  return double(c) / double(frame.strategy_grid.size());
}

}  // namespace tpgg
