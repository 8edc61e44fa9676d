#include "llg/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <fstream>
#include <stdexcept>

#include "llg/errors.hpp"
#include "llg/experiments.hpp"
#include "llg/results.hpp"

namespace llg {
namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  if (line > 0) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
  }
  throw ConfigError("config: " + msg);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(trim(s.substr(start)));
      return parts;
    }
    parts.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

bool parse_int(const std::string& s, long& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtol(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && errno == 0;
}

struct RawEntry {
  int line = 0;
  std::string value;
  bool used = false;
};

class Parser {
 public:
  explicit Parser(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (const auto pos = line.find('#'); pos != std::string::npos) {
        line.erase(pos);
      }
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) fail(lineno, "expected key = value");
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (key.empty()) fail(lineno, "missing key before '='");
      if (value.empty()) fail(lineno, "missing value for '" + key + "'");
      const auto [it, inserted] = entries_.emplace(key, RawEntry{lineno, value});
      if (!inserted) {
        fail(lineno, "duplicate key '" + key + "' (first set on line " +
                         std::to_string(it->second.line) + ")");
      }
    }
  }

  RawEntry* take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void reject_unknown() const {
    const RawEntry* worst = nullptr;
    std::string worst_key;
    for (const auto& [key, entry] : entries_) {
      if (entry.used) continue;
      if (!worst || entry.line < worst->line) {
        worst = &entry;
        worst_key = key;
      }
    }
    if (worst) fail(worst->line, "unknown key '" + worst_key + "'");
  }

  double number(const std::string& key, double fallback, int* line_out = nullptr) {
    RawEntry* e = take(key);
    if (!e) return fallback;
    if (line_out) *line_out = e->line;
    double v = 0.0;
    if (!parse_double(e->value, v) || !std::isfinite(v)) {
      fail(e->line, key + " must be a finite number, got '" + e->value + "'");
    }
    return v;
  }

  long integer(const std::string& key, long fallback, int* line_out = nullptr) {
    RawEntry* e = take(key);
    if (!e) return fallback;
    if (line_out) *line_out = e->line;
    long v = 0;
    if (!parse_int(e->value, v)) {
      fail(e->line, key + " must be an integer, got '" + e->value + "'");
    }
    return v;
  }

  Vec3 vec3(const std::string& key, const Vec3& fallback, int* line_out = nullptr) {
    RawEntry* e = take(key);
    if (!e) return fallback;
    if (line_out) *line_out = e->line;
    return parse_vec3(e->value, key, e->line);
  }

  static Vec3 parse_vec3(const std::string& text, const std::string& key, int line) {
    const auto parts = split(text, ',');
    Vec3 v;
    double* slots[3] = {&v.x, &v.y, &v.z};
    if (parts.size() != 3) {
      fail(line, key + " must be three comma separated numbers, got '" + text + "'");
    }
    for (int i = 0; i < 3; ++i) {
      if (!parse_double(parts[i], *slots[i]) || !std::isfinite(*slots[i])) {
        fail(line, key + " component " + std::to_string(i + 1) + " is not a finite number");
      }
    }
    return v;
  }

 private:
  std::map<std::string, RawEntry> entries_;
};

}  // namespace

RunConfig parse_config(const std::string& text, std::optional<ExperimentKind> force) {
  Parser in(text);
  RunConfig cfg;

  if (RawEntry* e = in.take("experiment")) {
    if (e->value == "stabilize") cfg.experiment = ExperimentKind::stabilize;
    else if (e->value == "hysteresis") cfg.experiment = ExperimentKind::hysteresis;
    else if (e->value == "sweep") cfg.experiment = ExperimentKind::sweep;
    else if (e->value == "verify") cfg.experiment = ExperimentKind::verify;
    else fail(e->line, "unknown experiment '" + e->value +
                           "' (expected stabilize, hysteresis, sweep or verify)");
  }
  if (force) cfg.experiment = *force;

  int n_line = 0;
  const long n = in.integer("grid.n", cfg.grid_n, &n_line);
  if (n < 2 || n > 10'000'000) fail(n_line, "grid.n must be an integer in [2, 1e7]");
  cfg.grid_n = static_cast<int>(n);

  int len_line = 0;
  cfg.grid_length = in.number("grid.length", cfg.grid_length, &len_line);
  if (cfg.grid_length <= 0.0) fail(len_line, "grid.length must be > 0");

  int nu_line = 0;
  cfg.nu = in.number("physics.nu", cfg.nu, &nu_line);
  if (cfg.nu < 0.0) fail(nu_line, "physics.nu must be >= 0");

  int k_line = 0;
  cfg.k = in.number("control.k", cfg.k, &k_line);
  if (cfg.k <= 0.0) fail(k_line, "control.k must be > 0");

  int frule_line = 0;
  if (RawEntry* e = in.take("control.f_rule")) {
    frule_line = e->line;
    if (e->value == "f_equals_k") cfg.f_rule = FRule::f_equals_k;
    else if (e->value == "constant") cfg.f_rule = FRule::constant;
    else fail(e->line, "control.f_rule must be f_equals_k or constant");
  }

  int fval_line = 0;
  bool fval_set = false;
  {
    const double v = in.number("control.f_value", cfg.f_value, &fval_line);
    fval_set = fval_line > 0;
    if (fval_set) cfg.f_value = v;
  }
  if (cfg.f_rule == FRule::f_equals_k) {
    if (fval_set) {
      fail(fval_line, "control.f_value is only valid with control.f_rule = constant");
    }
    cfg.f_value = cfg.k;
  } else if (!fval_set) {
    fail(frule_line, "control.f_rule = constant requires control.f_value");
  }

  int r_line = 0;
  cfg.r = in.vec3("control.r", cfg.r, &r_line);

  int preset_line = 0;
  bool preset_set = false;
  if (RawEntry* e = in.take("initial.preset")) {
    preset_line = e->line;
    preset_set = true;
    if (e->value == "target") cfg.initial = InitialPreset::target;
    else if (e->value == "perturbed") cfg.initial = InitialPreset::perturbed;
    else if (e->value == "constant") cfg.initial = InitialPreset::constant;
    else if (e->value == "nodes") cfg.initial = InitialPreset::nodes;
    else fail(e->line, "initial.preset must be target, perturbed, constant or nodes");
  }
  if (!preset_set) {
    const bool driven = cfg.experiment == ExperimentKind::hysteresis ||
                        cfg.experiment == ExperimentKind::sweep;
    cfg.initial = driven ? InitialPreset::target : InitialPreset::perturbed;
  }

  int const_line = 0;
  cfg.initial_constant = in.vec3("initial.constant", cfg.initial_constant, &const_line);
  if (const_line > 0 && cfg.initial != InitialPreset::constant) {
    fail(const_line, "initial.constant is only valid with initial.preset = constant");
  }
  if (cfg.initial == InitialPreset::constant &&
      norm(cfg.initial_constant) < 1e-8) {
    fail(const_line, "initial.constant must be a nonzero vector");
  }

  if (RawEntry* e = in.take("initial.nodes")) {
    if (cfg.initial != InitialPreset::nodes) {
      fail(e->line, "initial.nodes is only valid with initial.preset = nodes");
    }
    const auto parts = split(e->value, ';');
    for (const auto& p : parts) {
      const Vec3 v = Parser::parse_vec3(p, "initial.nodes", e->line);
      if (norm(v) < 1e-8) {
        fail(e->line, "initial.nodes entry " + std::to_string(cfg.initial_nodes.size() + 1) +
                          " is numerically zero");
      }
      cfg.initial_nodes.push_back(v);
    }
    if (static_cast<long>(cfg.initial_nodes.size()) != n + 1) {
      fail(e->line, "initial.nodes needs grid.n + 1 = " + std::to_string(n + 1) +
                        " entries, got " + std::to_string(cfg.initial_nodes.size()));
    }
  } else if (cfg.initial == InitialPreset::nodes) {
    fail(preset_line, "initial.preset = nodes requires initial.nodes");
  }

  cfg.initial_amplitude = in.number("initial.amplitude", cfg.initial_amplitude);

  if (RawEntry* e = in.take("integrator.scheme")) {
    if (e->value == "rk4") cfg.scheme = Scheme::rk4_projected;
    else if (e->value == "euler") cfg.scheme = Scheme::euler_projected;
    else fail(e->line, "integrator.scheme must be rk4 or euler");
  }

  if (RawEntry* e = in.take("integrator.dt")) {
    if (e->value == "auto") {
      cfg.dt = 0.0;
    } else {
      double v = 0.0;
      if (!parse_double(e->value, v) || !std::isfinite(v) || v <= 0.0) {
        fail(e->line, "integrator.dt must be 'auto' or a number > 0");
      }
      cfg.dt = v;
    }
  }

  int cfl_line = 0;
  cfg.cfl_safety = in.number("integrator.cfl_safety", cfg.cfl_safety, &cfl_line);
  if (cfg.cfl_safety <= 0.0 || cfg.cfl_safety > 1.0) {
    fail(cfl_line, "integrator.cfl_safety must be in (0, 1]");
  }

  if (RawEntry* e = in.take("integrator.projection")) {
    if (e->value == "auto") cfg.projection = ProjectionMode::automatic;
    else if (e->value == "on") cfg.projection = ProjectionMode::on;
    else if (e->value == "off") cfg.projection = ProjectionMode::off;
    else fail(e->line, "integrator.projection must be auto, on or off");
  }

  if (RawEntry* e = in.take("output.stride")) {
    if (e->value == "auto") {
      cfg.stride = 0;
    } else {
      long v = 0;
      if (!parse_int(e->value, v) || v < 1 || v > 1'000'000'000) {
        fail(e->line, "output.stride must be 'auto' or an integer >= 1");
      }
      cfg.stride = static_cast<int>(v);
    }
  }

  int tend_line = 0;
  cfg.t_end = in.number("stabilize.t_end", cfg.t_end, &tend_line);
  if (cfg.t_end <= 0.0) fail(tend_line, "stabilize.t_end must be > 0");

  int tol_line = 0;
  cfg.tol_conv = in.number("stabilize.tol_conv", cfg.tol_conv, &tol_line);
  if (cfg.tol_conv <= 0.0) fail(tol_line, "stabilize.tol_conv must be > 0");

  cfg.amplitude = in.number("hysteresis.amplitude", cfg.amplitude);

  if (RawEntry* e = in.take("hysteresis.omegas")) {
    cfg.omegas.clear();
    for (const auto& p : split(e->value, ',')) {
      double v = 0.0;
      if (!parse_double(p, v) || !std::isfinite(v) || v <= 0.0) {
        fail(e->line, "hysteresis.omegas entries must be numbers > 0, got '" + p + "'");
      }
      cfg.omegas.push_back(v);
    }
    if (cfg.omegas.empty()) fail(e->line, "hysteresis.omegas must not be empty");
  }

  int comp_line = 0;
  const long comp = in.integer("hysteresis.component", cfg.component, &comp_line);
  if (comp < 1 || comp > 3) fail(comp_line, "hysteresis.component must be 1, 2 or 3");
  cfg.component = static_cast<int>(comp);

  int xstar_line = 0;
  const double xs = in.number("hysteresis.xstar", cfg.grid_length, &xstar_line);
  cfg.xstar = xs;
  if (cfg.xstar < 0.0 || cfg.xstar > cfg.grid_length) {
    fail(xstar_line, "hysteresis.xstar must lie in [0, grid.length]");
  }

  int per_line = 0;
  const long per = in.integer("hysteresis.periods", cfg.periods, &per_line);
  if (per < 3 || per > 100'000) fail(per_line, "hysteresis.periods must be an integer >= 3");
  cfg.periods = static_cast<int>(per);

  in.reject_unknown();

  (void)cfg.make_params();
  try {
    (void)cfg.equilibrium();
  } catch (const ConfigError& e) {
    fail(r_line, e.what());
  }
  if (cfg.r.x == 0.0) {
    cfg.warnings.push_back(
        "control.r has zero first component; the collinear-equilibrium "
        "characterization assumes r1 != 0");
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path, std::optional<ExperimentKind> force) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), force);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string to_string(ExperimentKind e) {
  switch (e) {
    case ExperimentKind::stabilize: return "stabilize";
    case ExperimentKind::hysteresis: return "hysteresis";
    case ExperimentKind::sweep: return "sweep";
    case ExperimentKind::verify: return "verify";
  }
  return "?";
}

std::string to_string(FRule f) {
  return f == FRule::f_equals_k ? "f_equals_k" : "constant";
}

std::string to_string(InitialPreset p) {
  switch (p) {
    case InitialPreset::target: return "target";
    case InitialPreset::perturbed: return "perturbed";
    case InitialPreset::constant: return "constant";
    case InitialPreset::nodes: return "nodes";
  }
  return "?";
}

std::string to_string(ProjectionMode p) {
  switch (p) {
    case ProjectionMode::automatic: return "auto";
    case ProjectionMode::on: return "on";
    case ProjectionMode::off: return "off";
  }
  return "?";
}

std::string to_string(Scheme s) {
  return s == Scheme::rk4_projected ? "rk4" : "euler";
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  const auto put = [&](const char* key, const std::string& v) {
    out << key << " = " << v << "\n";
  };
  const auto putd = [&](const char* key, double v) { put(key, format_double(v)); };
  const auto vec = [](const Vec3& v) {
    return format_double(v.x) + "," + format_double(v.y) + "," + format_double(v.z);
  };

  put("experiment", to_string(c.experiment));
  put("grid.n", std::to_string(c.grid_n));
  putd("grid.length", c.grid_length);
  putd("physics.nu", c.nu);
  putd("control.k", c.k);
  put("control.f_rule", to_string(c.f_rule));
  if (c.f_rule == FRule::constant) putd("control.f_value", c.f_value);
  put("control.r", vec(c.r));
  put("initial.preset", to_string(c.initial));
  if (c.initial == InitialPreset::constant) put("initial.constant", vec(c.initial_constant));
  if (c.initial == InitialPreset::nodes) {
    std::string joined;
    for (std::size_t i = 0; i < c.initial_nodes.size(); ++i) {
      if (i) joined += ';';
      joined += vec(c.initial_nodes[i]);
    }
    put("initial.nodes", joined);
  }
  putd("initial.amplitude", c.initial_amplitude);
  put("integrator.scheme", to_string(c.scheme));
  if (c.dt > 0.0) putd("integrator.dt", c.dt);
  else put("integrator.dt", "auto");
  putd("integrator.cfl_safety", c.cfl_safety);
  put("integrator.projection", to_string(c.projection));
  if (c.stride > 0) put("output.stride", std::to_string(c.stride));
  else put("output.stride", "auto");
  putd("stabilize.t_end", c.t_end);
  putd("stabilize.tol_conv", c.tol_conv);
  putd("hysteresis.amplitude", c.amplitude);
  {
    std::string joined;
    for (std::size_t i = 0; i < c.omegas.size(); ++i) {
      if (i) joined += ',';
      joined += format_double(c.omegas[i]);
    }
    put("hysteresis.omegas", joined);
  }
  put("hysteresis.component", std::to_string(c.component));
  putd("hysteresis.xstar", c.xstar);
  put("hysteresis.periods", std::to_string(c.periods));
  return out.str();
}

SimParams RunConfig::make_params() const { return SimParams(nu, k, f_value, grid()); }

EquilibriumPoint RunConfig::equilibrium() const { return EquilibriumPoint(r); }

PeriodicInput RunConfig::periodic_input(double omega) const {
  return PeriodicInput(amplitude, omega, component);
}

IntegratorConfig RunConfig::integrator_config() const {
  IntegratorConfig c;
  c.dt = dt;
  c.scheme = scheme;
  c.cfl_safety = cfl_safety;
  switch (projection) {
    case ProjectionMode::on:
      c.project = true;
      break;
    case ProjectionMode::off:
      c.project = false;
      break;
    case ProjectionMode::automatic:
      c.project = experiment != ExperimentKind::hysteresis &&
                  experiment != ExperimentKind::sweep;
      break;
  }
  return c;
}

Field RunConfig::initial_field() const {
  const GridSpec g = grid();
  switch (initial) {
    case InitialPreset::target:
      return Field::uniform(g, equilibrium().vec());
    case InitialPreset::perturbed:
      return perturbed_initial(g, equilibrium(), initial_amplitude);
    case InitialPreset::constant:
      return renormalize(Field::uniform(g, initial_constant));
    case InitialPreset::nodes:
      return renormalize(Field(g, initial_nodes));
  }
  throw std::logic_error("unhandled initial preset");
}

}  // namespace llg
