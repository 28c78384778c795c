#pragma once

#include <span>

#include "tpgg/lattice.hpp"
#include "tpgg/params.hpp"
#include "tpgg/population.hpp"

namespace tpgg {

struct GroupAssessment {
  SiteIndex center = 0;
  std::span<const SiteIndex> members;
  int cooperators = 0;  // counted over all members, focal included
  double avg_reputation = 0.0;
  bool punished = false;  // avg_reputation < R0, strictly
};

/// Tolerant punishment gate: a group is fined only when its mean reputation
/// falls strictly below the threshold. `reputation_sum / group_size` is the
/// one place the mean is formed so every caller agrees at the boundary.
inline bool is_punished(double reputation_sum, int group_size, double R0) {
  return reputation_sum / group_size < R0;
}

/// Payoff of one member from one group game, given the inclusive cooperator
/// count. A cooperator's own unit is part of `cooperators`.
inline double group_payoff(Strategy s, int cooperators, int group_size, bool punished,
                           double r, double b) {
  const double share = r * cooperators / group_size;
  if (s == Strategy::Cooperate) return share - 1.0;
  return punished ? share - b : share;
}

GroupAssessment assess_group(const Population& pop, const Lattice& lat, SiteIndex center,
                             const SimParams& params);

/// Throws Error(InvalidArgument) if `member` is not in the assessed group.
double member_payoff(const GroupAssessment& group, SiteIndex member, Strategy s,
                     const SimParams& params);

/// Sum of the agent's payoffs over every group it belongs to, recomputed
/// from the current state.
double total_payoff(const Population& pop, const Lattice& lat, SiteIndex site,
                    const SimParams& params);

}  // namespace tpgg
