#include "tpgg/tpgg.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "tpgg/config.hpp"
#include "tpgg/error.hpp"
#include "tpgg/evolution.hpp"
#include "tpgg/harness.hpp"
#include "tpgg/metrics.hpp"

struct tpgg_config {
  tpgg::ExperimentSpec spec;
};

struct tpgg_sim {
  explicit tpgg_sim(const tpgg::SimParams& p) : sim(p) {}
  tpgg::Simulation sim;
};

namespace {

thread_local std::string g_last_error;

tpgg_status status_of(tpgg::ErrorCode code) {
  switch (code) {
    case tpgg::ErrorCode::InvalidArgument: return TPGG_ERR_INVALID_ARGUMENT;
    case tpgg::ErrorCode::InvalidSize: return TPGG_ERR_INVALID_SIZE;
    case tpgg::ErrorCode::OutOfRange: return TPGG_ERR_OUT_OF_RANGE;
    case tpgg::ErrorCode::Io: return TPGG_ERR_IO;
    case tpgg::ErrorCode::Parse: return TPGG_ERR_PARSE;
    case tpgg::ErrorCode::UnknownKey: return TPGG_ERR_UNKNOWN_KEY;
  }
  return TPGG_ERR_INTERNAL;
}

tpgg_status fail(tpgg_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
tpgg_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const tpgg::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TPGG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TPGG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TPGG_ERR_INTERNAL, "unknown error");
  }
}

#define TPGG_REQUIRE(ptr)                                                   \
  do {                                                                      \
    if ((ptr) == nullptr) return fail(TPGG_ERR_NULL_HANDLE, #ptr " is null"); \
  } while (0)

}  // namespace

extern "C" {

const char* tpgg_version(void) { return "1.0.0"; }

const char* tpgg_status_string(tpgg_status status) {
  switch (status) {
    case TPGG_OK: return "ok";
    case TPGG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TPGG_ERR_INVALID_SIZE: return "invalid size";
    case TPGG_ERR_OUT_OF_RANGE: return "out of range";
    case TPGG_ERR_IO: return "i/o error";
    case TPGG_ERR_PARSE: return "parse error";
    case TPGG_ERR_UNKNOWN_KEY: return "unknown key";
    case TPGG_ERR_NULL_HANDLE: return "null handle";
    case TPGG_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case TPGG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tpgg_last_error(void) { return g_last_error.c_str(); }

tpgg_status tpgg_config_create(tpgg_config** out) {
  return guarded([&] {
    TPGG_REQUIRE(out);
    *out = nullptr;
    auto cfg = std::make_unique<tpgg_config>();
    tpgg::apply_environment(cfg->spec);
    *out = cfg.release();
    return TPGG_OK;
  });
}

void tpgg_config_destroy(tpgg_config* config) { delete config; }

tpgg_status tpgg_config_load_file(tpgg_config* config, const char* path) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    TPGG_REQUIRE(path);
    tpgg::load_config_file(config->spec, path);
    return TPGG_OK;
  });
}

tpgg_status tpgg_config_set(tpgg_config* config, const char* key, const char* value) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    TPGG_REQUIRE(key);
    TPGG_REQUIRE(value);
    tpgg::apply_setting(config->spec, key, value);
    return TPGG_OK;
  });
}

tpgg_status tpgg_config_apply(tpgg_config* config, const char* assignment) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    TPGG_REQUIRE(assignment);
    tpgg::apply_assignment(config->spec, assignment);
    return TPGG_OK;
  });
}

tpgg_status tpgg_config_dump(const tpgg_config* config, char* buf, size_t len, size_t* needed) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    const std::string text = tpgg::to_config_text(config->spec);
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf == nullptr || len < text.size() + 1) {
      return fail(TPGG_ERR_BUFFER_TOO_SMALL,
                  "config text needs " + std::to_string(text.size() + 1) + " bytes");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return TPGG_OK;
  });
}

tpgg_status tpgg_config_validate(const tpgg_config* config) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    tpgg::validate(tpgg::with_default_axes(config->spec));
    return TPGG_OK;
  });
}

tpgg_status tpgg_config_experiment(const tpgg_config* config, tpgg_experiment_kind* kind) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    TPGG_REQUIRE(kind);
    *kind = static_cast<tpgg_experiment_kind>(int(config->spec.kind));
    return TPGG_OK;
  });
}

tpgg_status tpgg_config_has_axis(const tpgg_config* config, const char* name, int* present) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    TPGG_REQUIRE(name);
    TPGG_REQUIRE(present);
    *present = config->spec.axis(name) != nullptr ? 1 : 0;
    return TPGG_OK;
  });
}

tpgg_status tpgg_run_experiment(const tpgg_config* config, tpgg_experiment_kind kind,
                                const char* out_dir, tpgg_progress_fn progress, void* user,
                                size_t* points) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    tpgg::ExperimentSpec spec = config->spec;
    if (kind != TPGG_EXPERIMENT_FROM_CONFIG) {
      if (kind < TPGG_EXPERIMENT_DELTA_SWEEP || kind > TPGG_EXPERIMENT_HEATMAP) {
        return fail(TPGG_ERR_INVALID_ARGUMENT, "unknown experiment kind " + std::to_string(int(kind)));
      }
      spec.kind = static_cast<tpgg::ExperimentKind>(int(kind));
    }
    if (out_dir != nullptr) spec.output_dir = out_dir;
    tpgg::ProgressFn report;
    if (progress != nullptr) {
      report = [progress, user](const std::string& line) { progress(line.c_str(), user); };
    }
    const std::size_t n = tpgg::run_experiment(spec, report);
    if (points != nullptr) *points = n;
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_create(const tpgg_config* config, tpgg_sim** out) {
  return guarded([&] {
    TPGG_REQUIRE(config);
    TPGG_REQUIRE(out);
    *out = nullptr;
    *out = new tpgg_sim(config->spec.base);
    return TPGG_OK;
  });
}

void tpgg_sim_destroy(tpgg_sim* sim) { delete sim; }

tpgg_status tpgg_sim_step(tpgg_sim* sim, uint64_t steps) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    for (uint64_t k = 0; k < steps; ++k) sim->sim.mc_step();
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_side(const tpgg_sim* sim, int32_t* side) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(side);
    *side = sim->sim.lattice().side();
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_steps_taken(const tpgg_sim* sim, uint64_t* steps) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(steps);
    *steps = sim->sim.step_count();
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_cooperation_fraction(const tpgg_sim* sim, double* rho) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(rho);
    *rho = tpgg::cooperation_fraction(sim->sim.population());
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_mean_reputation(const tpgg_sim* sim, double* mean) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(mean);
    *mean = tpgg::mean_reputation(sim->sim.population());
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_state_hash(const tpgg_sim* sim, uint64_t* hash) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(hash);
    *hash = sim->sim.state_hash();
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_copy_strategies(const tpgg_sim* sim, uint8_t* buf, size_t len) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(buf);
    const auto& s = sim->sim.population().strategies;
    if (len < s.size()) {
      return fail(TPGG_ERR_BUFFER_TOO_SMALL, "need " + std::to_string(s.size()) + " entries");
    }
    for (std::size_t i = 0; i < s.size(); ++i) buf[i] = uint8_t(s[i]);
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_copy_reputations(const tpgg_sim* sim, double* buf, size_t len) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(buf);
    const auto& r = sim->sim.population().reputations;
    if (len < r.size()) {
      return fail(TPGG_ERR_BUFFER_TOO_SMALL, "need " + std::to_string(r.size()) + " entries");
    }
    std::memcpy(buf, r.data(), r.size() * sizeof(double));
    return TPGG_OK;
  });
}

tpgg_status tpgg_sim_payoff(const tpgg_sim* sim, uint32_t site, double* payoff) {
  return guarded([&] {
    TPGG_REQUIRE(sim);
    TPGG_REQUIRE(payoff);
    if (site >= sim->sim.population().size()) {
      return fail(TPGG_ERR_OUT_OF_RANGE, "site " + std::to_string(site) + " out of range");
    }
    *payoff = sim->sim.payoff(site);
    return TPGG_OK;
  });
}

}  // extern "C"
