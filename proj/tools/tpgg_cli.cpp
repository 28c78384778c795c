// Command-line front end. Talks to the simulator only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "tpgg/tpgg.h"

namespace {

struct ConfigDeleter {
  void operator()(tpgg_config* c) const { tpgg_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<tpgg_config, ConfigDeleter>;

class CliError {
 public:
  explicit CliError(tpgg_status status) : status_(status), message_(tpgg_last_error()) {}
  CliError(tpgg_status status, std::string message) : status_(status), message_(std::move(message)) {}

  int exit_code() const { return int(status_); }
  void print() const {
    std::fprintf(stderr, "tpgg: error: %s: %s\n", tpgg_status_string(status_), message_.c_str());
  }

 private:
  tpgg_status status_;
  std::string message_;
};

void check(tpgg_status status) {
  if (status != TPGG_OK) throw CliError(status);
}

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir;
  unsigned threads = 0;
  bool quiet = false;
};

void print_line(const char* line, void*) {
  std::printf("%s\n", line);
  std::fflush(stdout);
}

ConfigPtr load(const Options& opt) {
  tpgg_config* raw = nullptr;
  check(tpgg_config_create(&raw));
  ConfigPtr cfg(raw);
  if (!opt.config.empty()) check(tpgg_config_load_file(cfg.get(), opt.config.c_str()));
  if (opt.threads != 0) {
    check(tpgg_config_set(cfg.get(), "threads", std::to_string(opt.threads).c_str()));
  }
  for (const auto& kv : opt.overrides) check(tpgg_config_apply(cfg.get(), kv.c_str()));
  return cfg;
}

tpgg_experiment_kind sweep_kind(const tpgg_config* cfg) {
  tpgg_experiment_kind kind{};
  check(tpgg_config_experiment(cfg, &kind));
  if (kind == TPGG_EXPERIMENT_DELTA_SWEEP || kind == TPGG_EXPERIMENT_R_SWEEP) return kind;
  int has_delta = 0;
  int has_r = 0;
  check(tpgg_config_has_axis(cfg, "delta", &has_delta));
  check(tpgg_config_has_axis(cfg, "r", &has_r));
  if (has_delta) return TPGG_EXPERIMENT_DELTA_SWEEP;
  if (has_r) return TPGG_EXPERIMENT_R_SWEEP;
  throw CliError(TPGG_ERR_INVALID_ARGUMENT,
                 "sweep needs experiment = delta_sweep | r_sweep, or a grid.delta / grid.r axis");
}

int dispatch(const std::string& command, const Options& opt) {
  ConfigPtr cfg = load(opt);
  tpgg_experiment_kind kind = TPGG_EXPERIMENT_TIME_SERIES;
  if (command == "sweep") kind = sweep_kind(cfg.get());
  else if (command == "snapshot") kind = TPGG_EXPERIMENT_SNAPSHOT;
  else if (command == "heatmap") kind = TPGG_EXPERIMENT_HEATMAP;
  size_t points = 0;
  check(tpgg_run_experiment(cfg.get(), kind, opt.out_dir.empty() ? nullptr : opt.out_dir.c_str(),
                            opt.quiet ? nullptr : print_line, nullptr, &points));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial public goods game with reputation-threshold punishment"};
  app.set_version_flag("--version", std::string(tpgg_version()));
  app.require_subcommand(1);

  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"run", "Replica-averaged time series per grid point"},
      {"sweep", "Tail-averaged cooperation over a delta or r grid"},
      {"snapshot", "Strategy and reputation grids at selected steps"},
      {"heatmap", "Tail-averaged cooperation over the r-b plane"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opt.config, "Config file (key = value lines)");
    sub->add_option("-s,--set", opt.overrides, "Override a setting, key=value (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("-o,--out", opt.out_dir, "Output directory (overrides output_dir)");
    sub->add_option("-j,--threads", opt.threads, "Worker threads (0: all cores)");
    sub->add_flag("-q,--quiet", opt.quiet, "Suppress per-point summary lines");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opt);
  } catch (const CliError& e) {
    e.print();
    return e.exit_code();
  }
}
