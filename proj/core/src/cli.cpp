#include "llg/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "llg/certificates.hpp"
#include "llg/config.hpp"
#include "llg/errors.hpp"
#include "llg/experiments.hpp"
#include "llg/results.hpp"

namespace llg {
namespace {

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::string omega_csv;
  bool quiet = false;
  bool seedless = false;
};

std::string config_reference() {
  std::ostringstream out;
  out << "Configuration keys and their defaults:\n";
  std::istringstream lines(serialize_config(RunConfig{}));
  std::string line;
  while (std::getline(lines, line)) out << "  " << line << "\n";
  out << "  control.f_value = (required when control.f_rule = constant)\n"
      << "  initial.constant = 1,0,0 (used when initial.preset = constant)\n"
      << "  initial.nodes = x,y,z;... (grid.n + 1 entries, initial.preset = nodes)\n"
      << "\nThe subcommand decides what runs; it overrides the experiment key.\n";
  return out.str();
}

RunConfig load_for(const Options& o, ExperimentKind kind) {
  RunConfig cfg = o.config_path.empty() ? parse_config("", kind)
                                        : load_config_file(o.config_path, kind);
  if (!o.quiet) {
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  }
  return cfg;
}

std::vector<double> parse_omega_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size() || errno == ERANGE || v <= 0.0) {
      throw ConfigError("--omega entries must be numbers > 0, got '" + part + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--omega needs a comma separated list of numbers > 0");
  return out;
}

int run_simulate(const Options& o) {
  const RunConfig cfg = load_for(o, ExperimentKind::stabilize);
  ResultBundle bundle;
  bundle.config = cfg;
  bundle.stabilization =
      run_stabilization(cfg.make_params(), cfg.equilibrium(), cfg.initial_field(),
                        cfg.t_end, cfg.tol_conv, cfg.integrator_config(), cfg.stride);
  const auto files = write_results(bundle, o.out_dir);
  if (!o.quiet) {
    const auto& rep = *bundle.stabilization;
    std::cout << "stabilize: dt = " << format_double(rep.dt)
              << ", samples = " << rep.samples.size()
              << ", decay violations = " << rep.violations << "\n"
              << (rep.converged ? "converged" : "not converged");
    if (rep.t_converge) std::cout << " at t = " << format_double(*rep.t_converge);
    std::cout << ", final distance to target = "
              << format_double(rep.samples.back().err_norm) << "\n"
              << "wrote " << files.size() << " files to " << o.out_dir << "\n";
  }
  return 0;
}

int run_driven(const Options& o, ExperimentKind kind) {
  const RunConfig cfg = load_for(o, kind);
  std::vector<double> omegas = cfg.omegas;
  if (!o.omega_csv.empty()) omegas = parse_omega_csv(o.omega_csv);

  const HysteresisSetup setup{cfg.make_params(),
                              cfg.equilibrium(),
                              cfg.initial_field(),
                              cfg.periodic_input(omegas.front()),
                              cfg.periods,
                              cfg.xstar,
                              cfg.integrator_config()};
  ResultBundle bundle;
  bundle.config = cfg;
  bundle.sweep = frequency_sweep(setup, omegas);
  const auto files = write_results(bundle, o.out_dir);

  int exit_code = 0;
  for (const auto& e : bundle.sweep) {
    if (e.run) {
      if (!o.quiet) {
        std::cout << "omega = " << format_double(e.omega)
                  << ": loop area = " << format_double(e.run->area)
                  << (e.run->settled ? "" : " (loop not closed)") << "\n";
      }
    } else {
      std::cerr << "omega = " << format_double(e.omega) << ": error: " << e.error << "\n";
      exit_code = std::max(exit_code, e.error_exit_code);
    }
  }
  if (!o.quiet) std::cout << "wrote " << files.size() << " files to " << o.out_dir << "\n";
  return exit_code;
}

int run_verify(const Options& o) {
  const bool ok = run_certificates(std::cout, o.quiet);
  std::cout << (ok ? "verify: all certificates passed\n"
                   : "verify: certificate failures above\n");
  return ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Feedback stabilization and input-output experiments for a\n"
      "one-dimensional damped magnetization chain."};
  app.footer(config_reference());
  app.require_subcommand(1);

  Options o;
  const auto add_common = [&](CLI::App* sub, bool with_omega) {
    sub->add_option("--config", o.config_path, "Configuration file (key = value lines)");
    sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    sub->add_flag("--quiet", o.quiet, "Suppress progress output");
    sub->add_flag("--seedless", o.seedless,
                  "Accepted for compatibility; runs are always deterministic");
    if (with_omega) {
      sub->add_option("--omega", o.omega_csv,
                      "Comma separated drive frequencies overriding hysteresis.omegas");
    }
  };

  CLI::App* sim = app.add_subcommand("simulate", "Run the closed-loop stabilization experiment");
  add_common(sim, false);
  CLI::App* hys = app.add_subcommand(
      "hysteresis", "Drive the controlled chain periodically and record input-output loops");
  add_common(hys, true);
  CLI::App* swp =
      app.add_subcommand("sweep", "Hysteresis loops across a list of drive frequencies");
  add_common(swp, true);
  CLI::App* ver =
      app.add_subcommand("verify", "Run the built-in identity and property certificates");
  add_common(ver, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return run_simulate(o);
    if (hys->parsed()) return run_driven(o, ExperimentKind::hysteresis);
    if (swp->parsed()) return run_driven(o, ExperimentKind::sweep);
    return run_verify(o);
  } catch (const BlowupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("llgctl");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const auto& s : storage) argv.push_back(s.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace llg
