/*
 * C interface to the tolerant-punishment public goods game simulator.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a tpgg_status; on failure tpgg_last_error() holds a
 * message for the calling thread until its next API call.
 */
#ifndef TPGG_H
#define TPGG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TPGG_BUILDING_LIB)
#    define TPGG_API __declspec(dllexport)
#  else
#    define TPGG_API __declspec(dllimport)
#  endif
#else
#  define TPGG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpgg_status {
  TPGG_OK = 0,
  TPGG_ERR_INVALID_ARGUMENT = 1,
  TPGG_ERR_INVALID_SIZE = 2,
  TPGG_ERR_OUT_OF_RANGE = 3,
  TPGG_ERR_IO = 4,
  TPGG_ERR_PARSE = 5,
  TPGG_ERR_UNKNOWN_KEY = 6,
  TPGG_ERR_NULL_HANDLE = 7,
  TPGG_ERR_BUFFER_TOO_SMALL = 8,
  TPGG_ERR_INTERNAL = 9
} tpgg_status;

typedef enum tpgg_experiment_kind {
  TPGG_EXPERIMENT_FROM_CONFIG = -1, /* use the config's `experiment` key */
  TPGG_EXPERIMENT_DELTA_SWEEP = 0,
  TPGG_EXPERIMENT_R_SWEEP = 1,
  TPGG_EXPERIMENT_TIME_SERIES = 2,
  TPGG_EXPERIMENT_SNAPSHOT = 3,
  TPGG_EXPERIMENT_HEATMAP = 4
} tpgg_experiment_kind;

typedef struct tpgg_config tpgg_config;
typedef struct tpgg_sim tpgg_sim;

/* Receives one summary line per finished grid point. */
typedef void (*tpgg_progress_fn)(const char* line, void* user);

TPGG_API const char* tpgg_version(void);
TPGG_API const char* tpgg_status_string(tpgg_status status);
TPGG_API const char* tpgg_last_error(void);

/* Configuration. A new config holds the defaults, with the seed taken from
 * the SEED environment variable when set. */
TPGG_API tpgg_status tpgg_config_create(tpgg_config** out);
TPGG_API void tpgg_config_destroy(tpgg_config* config);
TPGG_API tpgg_status tpgg_config_load_file(tpgg_config* config, const char* path);
TPGG_API tpgg_status tpgg_config_set(tpgg_config* config, const char* key, const char* value);
/* "key=value" in one string, as passed to --set. */
TPGG_API tpgg_status tpgg_config_apply(tpgg_config* config, const char* assignment);
/* Full config text; `*needed` (if non-null) receives the size including the
 * terminator. Returns TPGG_ERR_BUFFER_TOO_SMALL when `len` is short. */
TPGG_API tpgg_status tpgg_config_dump(const tpgg_config* config, char* buf, size_t len,
                                      size_t* needed);
TPGG_API tpgg_status tpgg_config_validate(const tpgg_config* config);
TPGG_API tpgg_status tpgg_config_experiment(const tpgg_config* config, tpgg_experiment_kind* kind);
/* `*present` is set to 1 when the config sweeps `name` (e.g. "delta"). */
TPGG_API tpgg_status tpgg_config_has_axis(const tpgg_config* config, const char* name,
                                          int* present);

/* Runs an experiment and writes its outputs. `out_dir` overrides the
 * config's output_dir when non-null; `progress` may be null.
 * `points` (optional) receives the number of grid points processed. */
TPGG_API tpgg_status tpgg_run_experiment(const tpgg_config* config, tpgg_experiment_kind kind,
                                         const char* out_dir, tpgg_progress_fn progress,
                                         void* user, size_t* points);

/* Single simulation built from the config's base parameters. */
TPGG_API tpgg_status tpgg_sim_create(const tpgg_config* config, tpgg_sim** out);
TPGG_API void tpgg_sim_destroy(tpgg_sim* sim);
TPGG_API tpgg_status tpgg_sim_step(tpgg_sim* sim, uint64_t steps);
TPGG_API tpgg_status tpgg_sim_side(const tpgg_sim* sim, int32_t* side);
TPGG_API tpgg_status tpgg_sim_steps_taken(const tpgg_sim* sim, uint64_t* steps);
TPGG_API tpgg_status tpgg_sim_cooperation_fraction(const tpgg_sim* sim, double* rho);
TPGG_API tpgg_status tpgg_sim_mean_reputation(const tpgg_sim* sim, double* mean);
TPGG_API tpgg_status tpgg_sim_state_hash(const tpgg_sim* sim, uint64_t* hash);
/* Copy out row-major grids of side*side entries; strategies are 0 or 1. */
TPGG_API tpgg_status tpgg_sim_copy_strategies(const tpgg_sim* sim, uint8_t* buf, size_t len);
TPGG_API tpgg_status tpgg_sim_copy_reputations(const tpgg_sim* sim, double* buf, size_t len);
/* Total payoff of one site in the current state. */
TPGG_API tpgg_status tpgg_sim_payoff(const tpgg_sim* sim, uint32_t site, double* payoff);

#ifdef __cplusplus
}
#endif

#endif /* TPGG_H */
