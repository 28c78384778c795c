#include "tpgg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpgg/error.hpp"
#include "tpgg/game.hpp"

namespace tpgg {

double fitness(double payoff, double reputation, const SimParams& params) {
  return params.delta * payoff + (1.0 - params.delta) * (reputation - params.R0) / params.lambda;
}

double imitation_probability(double f_focal, double f_model, double kappa, FermiSign sign) {
  if (!(kappa > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "kappa must be > 0, got " + std::to_string(kappa));
  }
  const double diff = sign == FermiSign::Prose ? f_focal - f_model : f_model - f_focal;
  return 1.0 / (1.0 + std::exp(diff / kappa));
}

namespace {

std::shared_ptr<const Lattice> lattice_for(const SimParams& params,
                                           std::shared_ptr<const Lattice> lattice) {
  if (!lattice) return std::make_shared<const Lattice>(params.L, params.neighborhood);
  if (lattice->side() != params.L || lattice->kind() != params.neighborhood) {
    throw Error(ErrorCode::InvalidArgument, "shared lattice does not match L/neighborhood");
  }
  return lattice;
}

}  // namespace

bool elementary_revision(Population& pop, const Lattice& lat, const SimParams& params, Rng& rng) {
  const auto focal = SiteIndex(uniform_index(rng, lat.size()));
  const auto nbrs = lat.neighbors(focal);
  const SiteIndex model = nbrs[uniform_index(rng, nbrs.size())];
  bool changed = false;
  if (pop.strategies[focal] != pop.strategies[model]) {
    const int groups = lat.group_size();
    const double f_focal = fitness(fitness_payoff(total_payoff(pop, lat, focal, params), groups, params),
                                   pop.reputations[focal], params);
    const double f_model = fitness(fitness_payoff(total_payoff(pop, lat, model, params), groups, params),
                                   pop.reputations[model], params);
    const double p = imitation_probability(f_focal, f_model, params.kappa, params.fermi_sign);
    if (uniform_unit(rng) < p) {
      pop.strategies[focal] = pop.strategies[model];
      changed = true;
    }
  }
  if (params.reputation_timing == ReputationTiming::PerRevision) {
    pop.reputations[focal] = step_reputation(pop.reputations[focal], pop.strategies[focal]);
  }
  return changed;
}

void mc_step(Population& pop, const Lattice& lat, const SimParams& params, Rng& rng) {
  for (std::size_t k = 0; k < lat.size(); ++k) elementary_revision(pop, lat, params, rng);
  if (params.reputation_timing == ReputationTiming::PerStep) sweep_reputations(pop);
}

Simulation::Simulation(const SimParams& params, std::shared_ptr<const Lattice> lattice)
    : params_(params), rng_(params.seed) {
  params_.validate();
  lattice_ = lattice_for(params_, std::move(lattice));
  pop_ = init_population(params_, rng_);
  rebuild_caches();
}

Simulation::Simulation(const SimParams& params, Population initial,
                       std::shared_ptr<const Lattice> lattice)
    : params_(params), rng_(params.seed), pop_(std::move(initial)) {
  params_.validate();
  lattice_ = lattice_for(params_, std::move(lattice));
  if (pop_.strategies.size() != lattice_->size() || pop_.reputations.size() != lattice_->size()) {
    throw Error(ErrorCode::InvalidSize, "initial population does not match lattice size " +
                                            std::to_string(lattice_->size()));
  }
  for (double rep : pop_.reputations) {
    if (!(rep >= kMinReputation && rep <= kMaxReputation)) {
      throw Error(ErrorCode::OutOfRange, "initial reputation " + std::to_string(rep) +
                                             " outside [0, 20]");
    }
  }
  rebuild_caches();
}

void Simulation::rebuild_caches() {
  const Lattice& lat = *lattice_;
  const std::size_t n = lat.size();
  const auto g = std::size_t(lat.group_size());
  const auto table = lat.group_table();
  group_cooperators_.assign(n, 0);
  group_reputation_.assign(n, 0.0);
  total_cooperators_ = 0;
  for (std::size_t c = 0; c < n; ++c) {
    int coop = 0;
    double rep = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
      const SiteIndex m = table[c * g + k];
      coop += pop_.strategies[m] == Strategy::Cooperate ? 1 : 0;
      rep += pop_.reputations[m];
    }
    group_cooperators_[c] = coop;
    group_reputation_[c] = rep;
    total_cooperators_ += pop_.strategies[c] == Strategy::Cooperate ? 1 : 0;
  }
}

double Simulation::payoff(SiteIndex site) const {
  const Strategy s = pop_.strategies[site];
  const int g = lattice_->group_size();
  double total = 0.0;
  for (SiteIndex c : lattice_->groups_containing(site)) {
    total += group_payoff(s, group_cooperators_[c], g,
                          is_punished(group_reputation_[c], g, params_.R0), params_.r, params_.b);
  }
  return total;
}

double Simulation::fitness_of(SiteIndex site) const {
  return fitness(fitness_payoff(payoff(site), lattice_->group_size(), params_),
                 pop_.reputations[site], params_);
}

void Simulation::set_strategy(SiteIndex site, Strategy s) {
  if (pop_.strategies[site] == s) return;
  const int d = s == Strategy::Cooperate ? 1 : -1;
  for (SiteIndex c : lattice_->groups_containing(site)) group_cooperators_[c] += d;
  total_cooperators_ = std::size_t(std::ptrdiff_t(total_cooperators_) + d);
  pop_.strategies[site] = s;
}

void Simulation::step_site_reputation(SiteIndex site) {
  const double before = pop_.reputations[site];
  const double after = step_reputation(before, pop_.strategies[site]);
  if (after == before) return;
  for (SiteIndex c : lattice_->groups_containing(site)) group_reputation_[c] += after - before;
  pop_.reputations[site] = after;
}

bool Simulation::revise(SiteIndex focal, SiteIndex model) {
  bool changed = false;
  if (pop_.strategies[focal] != pop_.strategies[model]) {
    const double p = imitation_probability(fitness_of(focal), fitness_of(model), params_.kappa,
                                           params_.fermi_sign);
    if (uniform_unit(rng_) < p) {
      set_strategy(focal, pop_.strategies[model]);
      changed = true;
    }
  }
  if (params_.reputation_timing == ReputationTiming::PerRevision) step_site_reputation(focal);
  return changed;
}

bool Simulation::elementary_revision() {
  const auto focal = SiteIndex(uniform_index(rng_, lattice_->size()));
  const auto nbrs = lattice_->neighbors(focal);
  const SiteIndex model = nbrs[uniform_index(rng_, nbrs.size())];
  return revise(focal, model);
}

void Simulation::mc_step() {
  const std::size_t n = lattice_->size();
  for (std::size_t k = 0; k < n; ++k) elementary_revision();
  if (params_.reputation_timing == ReputationTiming::PerStep) {
    sweep_reputations(pop_);
    rebuild_caches();
  }
  ++step_;
}

bool Simulation::absorbed() const noexcept {
  const std::size_t n = pop_.size();
  double bound;
  if (total_cooperators_ == n) {
    bound = kMaxReputation;
  } else if (total_cooperators_ == 0) {
    bound = kMinReputation;
  } else {
    return false;
  }
  return std::all_of(pop_.reputations.begin(), pop_.reputations.end(),
                     [bound](double rep) { return rep == bound; });
}

RunResult run(const SimParams& params, const RunObserverHooks& hooks,
              std::shared_ptr<const Lattice> lattice) {
  Simulation sim(params, std::move(lattice));
  RunResult out;
  out.series.steps.reserve(params.steps + 1);
  out.series.rho_c.reserve(params.steps + 1);
  out.series.mean_reputation.reserve(params.steps + 1);

  std::vector<std::uint64_t> snaps = hooks.snapshot_steps;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  auto next_snap = snaps.begin();
  const std::uint64_t cadence = std::max<std::uint64_t>(hooks.cadence, 1);

  auto observe = [&](std::uint64_t step, double rho, double mean_rep) {
    const Population& pop = sim.population();
    out.series.push(step, rho, mean_rep);
    if (hooks.on_step && step % cadence == 0) hooks.on_step(step, pop);
    while (next_snap != snaps.end() && *next_snap < step) ++next_snap;
    if (next_snap != snaps.end() && *next_snap == step) {
      if (hooks.on_snapshot) hooks.on_snapshot(capture_snapshot(pop, sim.lattice(), step));
      ++next_snap;
    }
  };

  auto current_rho = [&] { return double(sim.cooperators()) / double(sim.population().size()); };

  observe(0, current_rho(), mean_reputation(sim.population()));
  std::uint64_t step = 0;
  while (step < params.steps) {
    if (params.early_exit && sim.absorbed()) break;
    sim.mc_step();
    ++step;
    observe(step, current_rho(), mean_reputation(sim.population()));
  }
  out.executed_steps = step;
  // Absorbed: the state is frozen, so the remaining observations repeat it.
  const double frozen_rho = current_rho();
  const double frozen_rep = mean_reputation(sim.population());
  for (std::uint64_t t = step + 1; t <= params.steps; ++t) observe(t, frozen_rho, frozen_rep);
  out.final_population = sim.population();
  return out;
}

}  // namespace tpgg
