#include "tpgg/params.hpp"

#include <cmath>
#include <string>

#include "tpgg/error.hpp"

namespace tpgg {

namespace {

[[noreturn]] void reject(const char* field, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, std::string("invalid ") + field + ": " + why);
}

void require_in(const char* field, double v, double lo, double hi) {
  if (!std::isfinite(v) || v < lo || v > hi) {
    reject(field, std::to_string(v) + " not in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

}  // namespace

std::string_view to_string(ReputationTiming timing) {
  return timing == ReputationTiming::PerRevision ? "per_revision" : "per_step";
}

std::string_view to_string(FermiSign sign) {
  return sign == FermiSign::Printed ? "printed" : "prose";
}

std::string_view to_string(PayoffMode mode) {
  return mode == PayoffMode::GroupMean ? "group_mean" : "total";
}

PayoffMode parse_payoff_mode(std::string_view text) {
  if (text == "total") return PayoffMode::Total;
  if (text == "group_mean") return PayoffMode::GroupMean;
  throw Error(ErrorCode::InvalidArgument,
              "unknown payoff_mode '" + std::string(text) + "' (expected total or group_mean)");
}

ReputationTiming parse_reputation_timing(std::string_view text) {
  if (text == "per_step") return ReputationTiming::PerStep;
  if (text == "per_revision") return ReputationTiming::PerRevision;
  throw Error(ErrorCode::InvalidArgument,
              "unknown reputation_timing '" + std::string(text) + "' (expected per_step or per_revision)");
}

FermiSign parse_fermi_sign(std::string_view text) {
  if (text == "prose") return FermiSign::Prose;
  if (text == "printed") return FermiSign::Printed;
  throw Error(ErrorCode::InvalidArgument,
              "unknown fermi_sign '" + std::string(text) + "' (expected prose or printed)");
}

void SimParams::validate() const {
  if (!std::isfinite(r) || r < 1.0) reject("r", std::to_string(r) + " must be >= 1");
  require_in("b", b, 0.0, 1.0);
  require_in("R0", R0, kMinReputation, kMaxReputation);
  require_in("delta", delta, 0.0, 1.0);
  if (!std::isfinite(kappa) || kappa <= 0.0) reject("kappa", std::to_string(kappa) + " must be > 0");
  if (!std::isfinite(lambda) || lambda <= 0.0) reject("lambda", std::to_string(lambda) + " must be > 0");
  if (L < 3) reject("L", std::to_string(L) + " must be >= 3");
  if (L > 65535) reject("L", std::to_string(L) + " too large");
  if (tail_window == 0) reject("tail_window", "must be >= 1");
  if (tail_window > steps + 1) {
    reject("tail_window", std::to_string(tail_window) + " exceeds recorded points (steps + 1 = " +
                              std::to_string(steps + 1) + ")");
  }
  if (replicas < 1) reject("replicas", std::to_string(replicas) + " must be >= 1");
}

}  // namespace tpgg
