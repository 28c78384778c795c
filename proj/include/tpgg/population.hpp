#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tpgg/params.hpp"
#include "tpgg/rng.hpp"

namespace tpgg {

enum class Strategy : std::uint8_t { Defect = 0, Cooperate = 1 };

/// Evolving per-agent state. Reputations stay in [0, 20].
struct Population {
  std::vector<Strategy> strategies;
  std::vector<double> reputations;

  std::size_t size() const noexcept { return strategies.size(); }

  /// Uniform population, mostly for tests.
  static Population uniform(std::size_t n, Strategy s, double reputation);

  friend bool operator==(const Population&, const Population&) = default;
};

/// Strategies are fair coin flips; reputations uniform over the integers 0..20.
/// Draws strategies for all sites first, then reputations.
Population init_population(const SimParams& params, Rng& rng);

/// One unit up for a cooperator, one down for a defector, clamped to [0, 20].
constexpr double step_reputation(double current, Strategy s) {
  if (s == Strategy::Cooperate) {
    const double next = current + 1.0;
    return next > kMaxReputation ? kMaxReputation : next;
  }
  const double next = current - 1.0;
  return next < kMinReputation ? kMinReputation : next;
}

/// Applies step_reputation to every agent using its current strategy.
void sweep_reputations(Population& pop);
[[nodiscard]] Population swept_reputations(Population pop);

/// FNV-1a over strategies and reputation bit patterns.
std::uint64_t state_hash(const Population& pop);

}  // namespace tpgg
