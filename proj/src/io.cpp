#include "tpgg/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tpgg/error.hpp"

namespace tpgg {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double to_double(std::string_view field, std::size_t line_no) {
  const std::string s(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorCode::Io, "cannot create directory '" + path.parent_path().string() +
                                     "': " + ec.message());
    }
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename into '" + path.string() + "'");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sweep_csv(const SweepResult& result) {
  std::string out;
  for (const auto& name : result.param_names) out += name + ",";
  out += "rho_c_mean,rho_c_sd,replicas\n";
  for (const auto& row : result.rows) {
    for (double v : row.params) out += format_number(v) + ",";
    out += format_number(row.mean) + "," + format_number(row.sd) + "," +
           std::to_string(row.replicas) + "\n";
  }
  return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::Parse, "sweep csv: missing header");
  const auto header = split(lines[0], ',');
  if (header.size() < 3 || header[header.size() - 3] != "rho_c_mean" ||
      header[header.size() - 2] != "rho_c_sd" || header.back() != "replicas") {
    throw Error(ErrorCode::Parse, "sweep csv: header must end with rho_c_mean,rho_c_sd,replicas");
  }
  SweepResult out;
  const std::size_t n_params = header.size() - 3;
  for (std::size_t i = 0; i < n_params; ++i) out.param_names.emplace_back(header[i]);
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto fields = split(lines[ln], ',');
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::Parse, "sweep csv line " + std::to_string(ln + 1) + ": expected " +
                                        std::to_string(header.size()) + " fields");
    }
    SweepRow row;
    for (std::size_t i = 0; i < n_params; ++i) row.params.push_back(to_double(fields[i], ln + 1));
    row.mean = to_double(fields[n_params], ln + 1);
    row.sd = to_double(fields[n_params + 1], ln + 1);
    const double reps = to_double(fields[n_params + 2], ln + 1);
    if (reps < 0 || reps != std::floor(reps)) {
      throw Error(ErrorCode::Parse, "sweep csv line " + std::to_string(ln + 1) + ": bad replicas");
    }
    row.replicas = int(reps);
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_sweep_csv(const fs::path& path, const SweepResult& result) {
  write_file_atomic(path, sweep_csv(result));
}

SweepResult read_sweep_csv(const fs::path& path) {
  try {
    return parse_sweep_csv(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string time_series_csv(const TimeSeries& series) {
  std::string out = "step,rho_c,mean_reputation\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += std::to_string(series.steps[i]) + "," + format_number(series.rho_c[i]) + "," +
           format_number(series.mean_reputation[i]) + "\n";
  }
  return out;
}

TimeSeries parse_time_series_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "step,rho_c,mean_reputation") {
    throw Error(ErrorCode::Parse, "time series csv: header must be step,rho_c,mean_reputation");
  }
  TimeSeries out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto f = split(lines[ln], ',');
    if (f.size() != 3) {
      throw Error(ErrorCode::Parse, "time series csv line " + std::to_string(ln + 1) + ": expected 3 fields");
    }
    out.push(std::uint64_t(to_double(f[0], ln + 1)), to_double(f[1], ln + 1),
             to_double(f[2], ln + 1));
  }
  return out;
}

std::string strategy_grid_text(const SnapshotFrame& frame) {
  std::string out;
  const auto side = std::size_t(frame.side);
  out.reserve(frame.strategy_grid.size() * 2);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      if (x) out += ' ';
      out += frame.strategy_grid[y * side + x] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string reputation_grid_text(const SnapshotFrame& frame) {
  std::string out;
  const auto side = std::size_t(frame.side);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      if (x) out += ' ';
      out += format_number(frame.reputation_grid[y * side + x]);
    }
    out += '\n';
  }
  return out;
}

std::pair<std::string, std::string> snapshot_file_names(std::string_view experiment, double R0,
                                                        std::uint64_t step) {
  const std::string stem =
      std::string(experiment) + "_" + format_number(R0) + "_" + std::to_string(step);
  return {stem + ".strategy.grid", stem + ".reputation.grid"};
}

namespace {

std::vector<std::vector<double>> parse_grid_rows(std::string_view text, const char* what) {
  std::vector<std::vector<double>> rows;
  for (auto line : lines_of(text)) {
    std::vector<double> row;
    for (auto field : split(line, ' ')) {
      if (field.empty()) continue;
      row.push_back(to_double(field, rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw Error(ErrorCode::Parse, std::string(what) + " grid is not square (" +
                                        std::to_string(rows.size()) + " rows, a row of " +
                                        std::to_string(row.size()) + ")");
    }
  }
  return rows;
}

}  // namespace

SnapshotFrame parse_snapshot(std::string_view strategy_text, std::string_view reputation_text,
                             std::uint64_t step) {
  const auto strat = parse_grid_rows(strategy_text, "strategy");
  const auto reps = parse_grid_rows(reputation_text, "reputation");
  if (strat.size() != reps.size()) {
    throw Error(ErrorCode::Parse, "strategy and reputation grids differ in size");
  }
  SnapshotFrame frame;
  frame.step = step;
  frame.side = int(strat.size());
  for (std::size_t y = 0; y < strat.size(); ++y) {
    for (std::size_t x = 0; x < strat.size(); ++x) {
      const double s = strat[y][x];
      const double rep = reps[y][x];
      if (s != 0.0 && s != 1.0) throw Error(ErrorCode::Parse, "strategy values must be 0 or 1");
      if (!(rep >= 0.0 && rep <= 20.0)) {
        throw Error(ErrorCode::Parse, "reputation values must lie in [0, 20]");
      }
      frame.strategy_grid.push_back(std::uint8_t(s));
      frame.reputation_grid.push_back(rep);
    }
  }
  return frame;
}

}  // namespace tpgg
