#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "tpgg/lattice.hpp"
#include "tpgg/metrics.hpp"
#include "tpgg/params.hpp"
#include "tpgg/population.hpp"
#include "tpgg/rng.hpp"

namespace tpgg {

/// delta * payoff + (1 - delta) * (reputation - R0) / lambda
double fitness(double payoff, double reputation, const SimParams& params);

/// Payoff as it enters fitness under `params.payoff_mode`.
inline double fitness_payoff(double total_payoff, int group_count, const SimParams& params) {
  return params.payoff_mode == PayoffMode::GroupMean ? total_payoff / group_count : total_payoff;
}

/// Fermi probability that the focal agent copies the model. With the default
/// sign a fitter model is copied with probability above one half.
/// Throws Error(InvalidArgument) when kappa <= 0.
double imitation_probability(double f_focal, double f_model, double kappa,
                             FermiSign sign = FermiSign::Prose);

// Reference dynamics. Payoffs are recomputed from scratch through
// total_payoff on every revision; slow, but with no cached state to go stale.
// Simulation below consumes the random stream identically.

/// One asynchronous revision: random focal, random neighbor as model, Fermi
/// adoption. Returns true if the focal strategy changed.
bool elementary_revision(Population& pop, const Lattice& lat, const SimParams& params, Rng& rng);

/// L^2 revisions followed by the reputation update for the configured timing.
void mc_step(Population& pop, const Lattice& lat, const SimParams& params, Rng& rng);

/// Cached simulation kernel.
///
/// Keeps per-group cooperator counts and reputation sums so a payoff costs
/// O(degree) instead of O(degree^2). The random stream is seeded once; the
/// initial population is drawn from it unless one is supplied.
class Simulation {
 public:
  explicit Simulation(const SimParams& params, std::shared_ptr<const Lattice> lattice = nullptr);
  Simulation(const SimParams& params, Population initial,
             std::shared_ptr<const Lattice> lattice = nullptr);

  const SimParams& params() const noexcept { return params_; }
  const Lattice& lattice() const noexcept { return *lattice_; }
  const Population& population() const noexcept { return pop_; }
  std::uint64_t step_count() const noexcept { return step_; }
  std::size_t cooperators() const noexcept { return total_cooperators_; }

  double payoff(SiteIndex site) const;
  double fitness_of(SiteIndex site) const;

  /// Revision with a chosen focal and model; draws one uniform only when
  /// their strategies differ. Returns true if the focal strategy changed.
  bool revise(SiteIndex focal, SiteIndex model);
  bool elementary_revision();
  void mc_step();

  /// All agents share one strategy and every reputation sits at the bound
  /// that strategy drives it to. Nothing observable changes after this.
  bool absorbed() const noexcept;

  std::uint64_t state_hash() const { return tpgg::state_hash(pop_); }
  Rng& rng() noexcept { return rng_; }

 private:
  void rebuild_caches();
  void set_strategy(SiteIndex site, Strategy s);
  void step_site_reputation(SiteIndex site);

  SimParams params_;
  std::shared_ptr<const Lattice> lattice_;
  Rng rng_;
  Population pop_;
  std::vector<int> group_cooperators_;
  std::vector<double> group_reputation_;
  std::size_t total_cooperators_ = 0;
  std::uint64_t step_ = 0;
};

struct RunObserverHooks {
  /// Called after initialization (step 0) and after every `cadence`-th step.
  std::function<void(std::uint64_t, const Population&)> on_step;
  std::uint64_t cadence = 1;
  /// Steps at which `on_snapshot` receives a frame; steps beyond the budget
  /// are ignored.
  std::vector<std::uint64_t> snapshot_steps;
  std::function<void(const SnapshotFrame&)> on_snapshot;
};

struct RunResult {
  TimeSeries series;  // steps 0..params.steps inclusive
  Population final_population;
  std::uint64_t executed_steps = 0;  // below params.steps only after an early exit
};

/// Initializes from `params.seed` and advances `params.steps` MC steps. With
/// `early_exit`, an absorbed state ends the loop and its values fill the rest
/// of the series.
RunResult run(const SimParams& params, const RunObserverHooks& hooks = {},
              std::shared_ptr<const Lattice> lattice = nullptr);

}  // namespace tpgg
