#include "tpgg/config.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tpgg/error.hpp"

namespace tpgg {

namespace {

constexpr std::array<std::string_view, 7> kSweepable{"r", "b", "R0", "delta", "kappa", "lambda", "L"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::Parse, "invalid value '" + std::string(value) + "' for key '" +
                                    std::string(key) + "': " + std::string(why));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  if (s.empty()) bad_value(key, text, "expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    bad_value(key, text, "expected a number");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  if (s.empty() || s.front() == '-') bad_value(key, text, "expected a non-negative integer");
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    bad_value(key, text, "expected a non-negative integer");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const auto v = parse_u64(key, text);
  if (v > 1'000'000'000ULL) bad_value(key, text, "integer too large");
  return int(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  const auto s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, text, "expected true or false");
}

template <class F>
auto rethrow_with_key(std::string_view key, std::string_view value, F&& parse) {
  try {
    return parse(trim(value));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    bad_value(key, value, e.what());
  }
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DeltaSweep: return "delta_sweep";
    case ExperimentKind::RSweep: return "r_sweep";
    case ExperimentKind::TimeSeriesRun: return "timeseries";
    case ExperimentKind::SnapshotRun: return "snapshot";
    case ExperimentKind::HeatmapSweep: return "heatmap";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto kind : {ExperimentKind::DeltaSweep, ExperimentKind::RSweep, ExperimentKind::TimeSeriesRun,
                    ExperimentKind::SnapshotRun, ExperimentKind::HeatmapSweep}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown experiment '" + std::string(text) +
                  "' (expected delta_sweep, r_sweep, timeseries, snapshot or heatmap)");
}

std::string ExperimentSpec::label() const {
  return name.empty() ? std::string(to_string(kind)) : name;
}

const GridAxis* ExperimentSpec::axis(std::string_view axis_name) const {
  for (const auto& a : grid) {
    if (a.name == axis_name) return &a;
  }
  return nullptr;
}

bool is_sweepable(std::string_view key) {
  return std::find(kSweepable.begin(), kSweepable.end(), key) != kSweepable.end();
}

void set_param(SimParams& p, std::string_view key, double value) {
  if (key == "r") p.r = value;
  else if (key == "b") p.b = value;
  else if (key == "R0") p.R0 = value;
  else if (key == "delta") p.delta = value;
  else if (key == "kappa") p.kappa = value;
  else if (key == "lambda") p.lambda = value;
  else if (key == "L") {
    if (value != std::floor(value) || value < 0 || value > 1e9) {
      throw Error(ErrorCode::InvalidArgument, "L must be an integer, got " + format_value(value));
    }
    p.L = int(value);
  } else {
    throw Error(ErrorCode::UnknownKey, "parameter '" + std::string(key) + "' cannot be swept");
  }
}

std::vector<double> parse_grid_values(std::string_view key, std::string_view text) {
  const auto body = trim(text);
  std::vector<double> out;
  if (body.empty()) bad_value(key, text, "empty grid");
  if (body.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::string_view rest = body;
    for (auto pos = rest.find(':'); pos != std::string_view::npos; pos = rest.find(':')) {
      parts.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    parts.push_back(rest);
    if (parts.size() != 3) bad_value(key, text, "range must be start:stop:count");
    const double start = parse_double(key, parts[0]);
    const double stop = parse_double(key, parts[1]);
    const auto count = parse_u64(key, parts[2]);
    if (count == 0) bad_value(key, text, "range count must be >= 1");
    if (count == 1 && start != stop) bad_value(key, text, "a one-point range needs start == stop");
    for (std::uint64_t k = 0; k < count; ++k) {
      out.push_back(count == 1 ? start : start + (stop - start) * double(k) / double(count - 1));
    }
    return out;
  }
  std::string_view rest = body;
  while (true) {
    const auto pos = rest.find(',');
    out.push_back(parse_double(key, rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  return out;
}

void apply_setting(ExperimentSpec& spec, std::string_view raw_key, std::string_view value) {
  const auto key = trim(raw_key);
  SimParams& p = spec.base;
  const auto dbl = [&] { return parse_double(key, value); };

  if (key.starts_with("grid.")) {
    const auto axis_name = key.substr(5);
    if (!is_sweepable(axis_name)) {
      throw Error(ErrorCode::UnknownKey,
                  "unknown grid key '" + std::string(key) + "' (sweepable: r, b, R0, delta, kappa, lambda, L)");
    }
    auto values = parse_grid_values(key, value);
    auto it = std::find_if(spec.grid.begin(), spec.grid.end(),
                           [&](const GridAxis& a) { return a.name == axis_name; });
    if (it != spec.grid.end()) it->values = std::move(values);
    else spec.grid.push_back({std::string(axis_name), std::move(values)});
    return;
  }

  if (key == "r") p.r = dbl();
  else if (key == "b") p.b = dbl();
  else if (key == "R0") p.R0 = dbl();
  else if (key == "delta") p.delta = dbl();
  else if (key == "kappa") p.kappa = dbl();
  else if (key == "lambda") p.lambda = dbl();
  else if (key == "L") p.L = parse_int(key, value);
  else if (key == "steps") p.steps = parse_u64(key, value);
  else if (key == "seed") p.seed = parse_u64(key, value);
  else if (key == "tail_window") p.tail_window = parse_u64(key, value);
  else if (key == "replicas") p.replicas = parse_int(key, value);
  else if (key == "early_exit") p.early_exit = parse_bool(key, value);
  else if (key == "neighborhood")
    p.neighborhood = rethrow_with_key(key, value, [](auto v) { return parse_neighborhood(v); });
  else if (key == "reputation_timing")
    p.reputation_timing =
        rethrow_with_key(key, value, [](auto v) { return parse_reputation_timing(v); });
  else if (key == "payoff_mode")
    p.payoff_mode = rethrow_with_key(key, value, [](auto v) { return parse_payoff_mode(v); });
  else if (key == "fermi_sign")
    p.fermi_sign = rethrow_with_key(key, value, [](auto v) { return parse_fermi_sign(v); });
  else if (key == "experiment")
    spec.kind = rethrow_with_key(key, value, [](auto v) { return parse_experiment_kind(v); });
  else if (key == "name") spec.name = std::string(trim(value));
  else if (key == "output_dir") spec.output_dir = std::string(trim(value));
  else if (key == "threads") spec.threads = unsigned(parse_int(key, value));
  else if (key == "snapshot_steps") {
    spec.snapshot_steps.clear();
    for (double v : parse_grid_values(key, value)) {
      if (v < 0 || v != std::floor(v)) bad_value(key, value, "snapshot steps must be non-negative integers");
      spec.snapshot_steps.push_back(std::uint64_t(v));
    }
  } else {
    throw Error(ErrorCode::UnknownKey, "unknown key '" + std::string(key) + "'");
  }
}

void apply_assignment(ExperimentSpec& spec, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::Parse, "expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(spec, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void load_config_text(ExperimentSpec& spec, std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_assignment(spec, line);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void load_config_file(ExperimentSpec& spec, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_config_text(spec, buf.str(), path.string());
}

void apply_environment(ExperimentSpec& spec) {
  if (const char* seed = std::getenv("SEED"); seed != nullptr && *seed != '\0') {
    spec.base.seed = parse_u64("SEED", seed);
  }
}

void validate(const ExperimentSpec& spec) {
  spec.base.validate();
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const auto& a = spec.grid[i];
    if (!is_sweepable(a.name)) {
      throw Error(ErrorCode::UnknownKey, "grid axis '" + a.name + "' is not a sweepable parameter");
    }
    if (a.values.empty()) throw Error(ErrorCode::InvalidArgument, "grid." + a.name + " is empty");
    for (std::size_t j = i + 1; j < spec.grid.size(); ++j) {
      if (spec.grid[j].name == a.name) {
        throw Error(ErrorCode::InvalidArgument, "grid." + a.name + " given twice");
      }
    }
    for (double v : a.values) {
      SimParams probe = spec.base;
      try {
        set_param(probe, a.name, v);
        probe.validate();
      } catch (const Error& e) {
        throw Error(ErrorCode::InvalidArgument,
                    "grid." + a.name + " value " + format_value(v) + ": " + e.what());
      }
    }
  }
  auto require = [&](std::string_view axis) {
    if (spec.axis(axis) == nullptr) {
      throw Error(ErrorCode::InvalidArgument, std::string(to_string(spec.kind)) +
                                                  " needs a grid." + std::string(axis) + " axis");
    }
  };
  switch (spec.kind) {
    case ExperimentKind::DeltaSweep: require("delta"); break;
    case ExperimentKind::RSweep: require("r"); break;
    case ExperimentKind::HeatmapSweep:
      require("r");
      require("b");
      break;
    case ExperimentKind::SnapshotRun:
      for (const auto& a : spec.grid) {
        if (a.name != "R0") {
          throw Error(ErrorCode::InvalidArgument,
                      "snapshot runs sweep only R0, got grid." + a.name);
        }
      }
      break;
    case ExperimentKind::TimeSeriesRun: break;
  }
}

std::string to_config_text(const ExperimentSpec& spec) {
  const SimParams& p = spec.base;
  std::ostringstream os;
  os << "experiment = " << to_string(spec.kind) << "\n";
  if (!spec.name.empty()) os << "name = " << spec.name << "\n";
  os << "r = " << format_value(p.r) << "\n"
     << "b = " << format_value(p.b) << "\n"
     << "R0 = " << format_value(p.R0) << "\n"
     << "delta = " << format_value(p.delta) << "\n"
     << "kappa = " << format_value(p.kappa) << "\n"
     << "lambda = " << format_value(p.lambda) << "\n"
     << "L = " << p.L << "\n"
     << "steps = " << p.steps << "\n"
     << "seed = " << p.seed << "\n"
     << "neighborhood = " << to_string(p.neighborhood) << "\n"
     << "tail_window = " << p.tail_window << "\n"
     << "replicas = " << p.replicas << "\n"
     << "reputation_timing = " << to_string(p.reputation_timing) << "\n"
     << "fermi_sign = " << to_string(p.fermi_sign) << "\n"
     << "payoff_mode = " << to_string(p.payoff_mode) << "\n"
     << "early_exit = " << (p.early_exit ? "true" : "false") << "\n"
     << "output_dir = " << spec.output_dir.string() << "\n"
     << "threads = " << spec.threads << "\n";
  os << "snapshot_steps = ";
  for (std::size_t i = 0; i < spec.snapshot_steps.size(); ++i) {
    os << (i ? ", " : "") << spec.snapshot_steps[i];
  }
  os << "\n";
  for (const auto& a : spec.grid) {
    os << "grid." << a.name << " = ";
    for (std::size_t i = 0; i < a.values.size(); ++i) os << (i ? ", " : "") << format_value(a.values[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace tpgg
