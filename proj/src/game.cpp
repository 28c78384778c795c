#include "tpgg/game.hpp"

#include <algorithm>
#include <string>

#include "tpgg/error.hpp"

namespace tpgg {

GroupAssessment assess_group(const Population& pop, const Lattice& lat, SiteIndex center,
                             const SimParams& params) {
  GroupAssessment out;
  out.center = center;
  out.members = lat.group(center);
  double rep_sum = 0.0;
  for (SiteIndex m : out.members) {
    out.cooperators += pop.strategies[m] == Strategy::Cooperate ? 1 : 0;
    rep_sum += pop.reputations[m];
  }
  const int g = int(out.members.size());
  out.avg_reputation = rep_sum / g;
  out.punished = is_punished(rep_sum, g, params.R0);
  return out;
}

double member_payoff(const GroupAssessment& group, SiteIndex member, Strategy s,
                     const SimParams& params) {
  if (std::find(group.members.begin(), group.members.end(), member) == group.members.end()) {
    throw Error(ErrorCode::InvalidArgument, "site " + std::to_string(member) +
                                                " is not a member of the group centered at " +
                                                std::to_string(group.center));
  }
  return group_payoff(s, group.cooperators, int(group.members.size()), group.punished, params.r,
                      params.b);
}

double total_payoff(const Population& pop, const Lattice& lat, SiteIndex site,
                    const SimParams& params) {
  const Strategy s = pop.strategies[site];
  double total = 0.0;
  for (SiteIndex center : lat.groups_containing(site)) {
    const GroupAssessment g = assess_group(pop, lat, center, params);
    total += group_payoff(s, g.cooperators, int(g.members.size()), g.punished, params.r, params.b);
  }
  return total;
}

}  // namespace tpgg
