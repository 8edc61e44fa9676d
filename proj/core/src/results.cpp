#include "llg/results.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "llg/errors.hpp"

namespace llg {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  return in;
}

double column(const std::string& cell, const std::filesystem::path& path, int lineno) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                      ": bad number '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void expect_header(std::ifstream& in, const std::string& want,
                   const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError(path.string() + ": empty file, expected header '" + want + "'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != want) {
    throw ConfigError(path.string() + ": expected header '" + want + "', got '" + line + "'");
  }
}

/// Rows of the closing drive period, the part loop areas are computed from.
std::size_t final_period_start(const HysteresisRun& run) {
  if (run.series.empty()) return 0;
  const double period = 2.0 * 3.141592653589793238462643383279502884 / run.omega;
  const double cut = run.series.back().t - period * (1.0 + 1e-9);
  std::size_t i = 0;
  while (i < run.series.size() && run.series[i].t < cut) ++i;
  return i;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::filesystem::path> write_results(const ResultBundle& bundle,
                                                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + out_dir.string() +
                      "': " + ec.message());
  }

  std::vector<std::filesystem::path> written;

  if (bundle.stabilization) {
    const auto path = out_dir / "trajectory.csv";
    auto out = open_out(path);
    out << "t,V,dVdt_est,bound,err_norm,cross_h_norm_sq\n";
    for (const auto& s : bundle.stabilization->samples) {
      out << format_double(s.t) << ',' << format_double(s.V) << ','
          << format_double(s.dVdt_est) << ',' << format_double(s.bound) << ','
          << format_double(s.err_norm) << ',' << format_double(s.cross_h_norm_sq) << '\n';
    }
    if (!out.flush()) throw ConfigError("cannot write '" + path.string() + "'");
    written.push_back(path);
  }

  bool any_run = false;
  for (const auto& entry : bundle.sweep) {
    if (!entry.run) continue;
    any_run = true;
    const auto path = out_dir / ("hysteresis_" + format_double(entry.run->omega) + ".csv");
    auto out = open_out(path);
    out << "t,uhat,m_out\n";
    for (const auto& p : entry.run->series) {
      out << format_double(p.t) << ',' << format_double(p.input) << ','
          << format_double(p.output) << '\n';
    }
    if (!out.flush()) throw ConfigError("cannot write '" + path.string() + "'");
    written.push_back(path);
  }

  if (any_run) {
    const auto path = out_dir / "loops.csv";
    auto out = open_out(path);
    out << "omega,t,uhat,m_out\n";
    for (const auto& entry : bundle.sweep) {
      if (!entry.run) continue;
      const auto& run = *entry.run;
      for (std::size_t i = final_period_start(run); i < run.series.size(); ++i) {
        const auto& p = run.series[i];
        out << format_double(run.omega) << ',' << format_double(p.t) << ','
            << format_double(p.input) << ',' << format_double(p.output) << '\n';
      }
    }
    if (!out.flush()) throw ConfigError("cannot write '" + path.string() + "'");
    written.push_back(path);
  }

  const auto summary_path = out_dir / "summary";
  {
    auto out = open_out(summary_path);
    out << "schema = " << bundle.schema_version << "\n";
    out << "\n[config]\n" << serialize_config(bundle.config);
    out << "\n[results]\n";
    if (bundle.stabilization) {
      const auto& rep = *bundle.stabilization;
      out << "dt = " << format_double(rep.dt) << "\n";
      out << "samples = " << rep.samples.size() << "\n";
      out << "decay_violations = " << rep.violations << "\n";
      out << "converged = " << (rep.converged ? "yes" : "no") << "\n";
      out << "t_converge = "
          << (rep.t_converge ? format_double(*rep.t_converge) : std::string("-")) << "\n";
      if (!rep.samples.empty()) {
        out << "V_first = " << format_double(rep.samples.front().V) << "\n";
        out << "V_last = " << format_double(rep.samples.back().V) << "\n";
        out << "err_first = " << format_double(rep.samples.front().err_norm) << "\n";
        out << "err_last = " << format_double(rep.samples.back().err_norm) << "\n";
      }
    }
    for (const auto& entry : bundle.sweep) {
      if (entry.run) {
        out << "loop omega = " << format_double(entry.omega)
            << " area = " << format_double(entry.run->area)
            << " closed = " << (entry.run->settled ? "yes" : "no") << "\n";
      } else {
        out << "loop omega = " << format_double(entry.omega) << " error = \"" << entry.error
            << "\" exit = " << entry.error_exit_code << "\n";
      }
    }
    out << "\n[files]\n";
    for (const auto& p : written) out << p.filename().string() << "\n";
    out << "summary\n";
    if (!out.flush()) throw ConfigError("cannot write '" + summary_path.string() + "'");
  }
  written.push_back(summary_path);
  return written;
}

std::vector<LyapunovSample> read_trajectory_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, "t,V,dVdt_est,bound,err_norm,cross_h_norm_sq", path);
  std::vector<LyapunovSample> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != 6) {
      throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                        ": expected 6 columns, got " + std::to_string(cells.size()));
    }
    LyapunovSample s;
    s.t = column(cells[0], path, lineno);
    s.V = column(cells[1], path, lineno);
    s.dVdt_est = column(cells[2], path, lineno);
    s.bound = column(cells[3], path, lineno);
    s.err_norm = column(cells[4], path, lineno);
    s.cross_h_norm_sq = column(cells[5], path, lineno);
    rows.push_back(s);
  }
  return rows;
}

std::vector<HysteresisPoint> read_hysteresis_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, "t,uhat,m_out", path);
  std::vector<HysteresisPoint> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != 3) {
      throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                        ": expected 3 columns, got " + std::to_string(cells.size()));
    }
    rows.push_back({column(cells[0], path, lineno), column(cells[1], path, lineno),
                    column(cells[2], path, lineno)});
  }
  return rows;
}

}  // namespace llg
