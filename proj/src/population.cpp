#include "tpgg/population.hpp"

#include <bit>
#include <cstring>

namespace tpgg {

Population Population::uniform(std::size_t n, Strategy s, double reputation) {
  return Population{std::vector<Strategy>(n, s), std::vector<double>(n, reputation)};
}

Population init_population(const SimParams& params, Rng& rng) {
  params.validate();
  const auto n = std::size_t(params.L) * std::size_t(params.L);
  Population pop;
  pop.strategies.resize(n);
  pop.reputations.resize(n);
  for (auto& s : pop.strategies) s = uniform_index(rng, 2) ? Strategy::Cooperate : Strategy::Defect;
  for (auto& rep : pop.reputations) rep = double(uniform_index(rng, 21));
  return pop;
}

void sweep_reputations(Population& pop) {
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop.reputations[i] = step_reputation(pop.reputations[i], pop.strategies[i]);
  }
}

Population swept_reputations(Population pop) {
  sweep_reputations(pop);
  return pop;
}

std::uint64_t state_hash(const Population& pop) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(pop.size());
  for (auto s : pop.strategies) feed(std::uint64_t(s));
  for (double rep : pop.reputations) feed(std::bit_cast<std::uint64_t>(rep));
  return h;
}

}  // namespace tpgg
