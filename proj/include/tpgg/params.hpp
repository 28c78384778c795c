#pragma once

#include <cstdint>
#include <string_view>

#include "tpgg/lattice.hpp"

namespace tpgg {

/// When reputations follow strategies: once after every full MC step, or for
/// the focal agent right after each elementary revision.
enum class ReputationTiming { PerStep, PerRevision };

/// Sign convention of the Fermi exponent. `Prose` makes a fitter model more
/// likely to be imitated; `Printed` evaluates the exponent as (f_model - f_focal).
enum class FermiSign { Prose, Printed };

/// Payoff fed into fitness: the sum over all groups the agent plays in, or
/// that sum divided by the number of groups.
enum class PayoffMode { Total, GroupMean };

std::string_view to_string(ReputationTiming timing);
std::string_view to_string(FermiSign sign);
std::string_view to_string(PayoffMode mode);
ReputationTiming parse_reputation_timing(std::string_view text);
FermiSign parse_fermi_sign(std::string_view text);
PayoffMode parse_payoff_mode(std::string_view text);

inline constexpr double kMinReputation = 0.0;
inline constexpr double kMaxReputation = 20.0;

struct SimParams {
  double r = 2.5;        // enhancement factor
  double b = 0.0;        // fine on defectors in punished groups
  double R0 = 1.0;       // reputation threshold
  double delta = 0.5;    // payoff weight in fitness
  double kappa = 0.5;    // Fermi noise
  double lambda = 20.0;  // reputation scale
  int L = 60;
  std::uint64_t steps = 10000;
  std::uint64_t seed = 1;
  Neighborhood neighborhood = Neighborhood::VonNeumann;
  std::uint64_t tail_window = 500;
  int replicas = 20;
  ReputationTiming reputation_timing = ReputationTiming::PerStep;
  FermiSign fermi_sign = FermiSign::Prose;
  PayoffMode payoff_mode = PayoffMode::Total;
  bool early_exit = false;

  /// Throws Error(InvalidArgument) naming the first offending field.
  void validate() const;
};

}  // namespace tpgg
