// Command-line front end: spectra, zero modes, ground-state observables,
// phase diagrams (clean and disordered), dot bias sweeps, and a brute-force
// self check. Every output embeds its effective configuration, and any run
// can be reproduced from that line via --config.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majorana/majorana.hpp"

namespace {

using majorana::io::fmt17;
using majorana::io::json;

// --config support: the JSON file is a flat object whose keys are long option
// names. Its values are turned into synthetic --key=value tokens inserted
// right after the subcommand token; since every option takes the last value,
// flags given on the command line override the file.
std::string extract_config_path(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(std::string("--config=").size());
  }
  return path;
}

std::vector<std::string> with_config_defaults(std::vector<std::string> args) {
  const std::string path = extract_config_path(args);
  if (path.empty()) return args;
  std::ifstream input(path);
  if (!input) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json root;
  try {
    input >> root;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("invalid JSON config: " + std::string(e.what()));
  }
  if (!root.is_object()) throw std::invalid_argument("config root must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : root.items()) {
    if (key == "config")
      throw std::invalid_argument("config files cannot nest a 'config' key");
    tokens.push_back("--" + key + "=" +
                     (value.is_string() ? value.get<std::string>() : value.dump()));
  }
  const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return !a.empty() && a.front() != '-';
  });
  if (sub == args.end()) return args;  // no subcommand; the parser will complain
  args.insert(sub + 1, tokens.begin(), tokens.end());
  return args;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

// Options shared by the single-chain commands.
struct ChainOpts {
  int sites = 50;
  double t = 1.0;
  double delta = 0.0;
  double theta = 0.0;
  double mu = 0.0;
  double noise_v0 = 0.0;
  std::uint64_t noise_seed = 0;
  std::uint64_t noise_draw = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sites", sites, "Number of chain sites")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--t", t, "Hopping amplitude")->capture_default_str();
    cmd->add_option("--delta", delta, "Pairing magnitude |Delta|")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--theta", theta, "Pairing phase")->capture_default_str();
    cmd->add_option("--mu", mu, "Chemical potential")->capture_default_str();
    cmd->add_option("--noise-v0", noise_v0, "Disorder amplitude (0 = clean)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--noise-seed", noise_seed, "Disorder seed")->capture_default_str();
    cmd->add_option("--noise-draw", noise_draw, "Disorder draw index within the seed")
        ->capture_default_str();
  }

  majorana::ChainParams params() const { return {sites, t, delta, theta, mu}; }

  majorana::SitePotentials potentials() const {
    if (noise_v0 <= 0.0) return {};
    return majorana::sample_noise({noise_v0, noise_seed, noise_draw}, sites);
  }

  void describe(json& cfg) const {
    cfg["sites"] = sites;
    cfg["t"] = t;
    cfg["delta"] = delta;
    cfg["theta"] = theta;
    cfg["mu"] = mu;
    cfg["noise-v0"] = noise_v0;
    cfg["noise-seed"] = noise_seed;
    cfg["noise-draw"] = noise_draw;
  }
};

struct GridOpts {
  int sites = 60;
  double t = 1.0;
  double delta_min = 0.05, delta_max = 1.2;
  int delta_count = 40;
  double mu_min = 0.0, mu_max = 3.0;
  int mu_count = 120;
  double energy_tol = 0.002;
  bool strict = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sites", sites, "Number of chain sites")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--t", t, "Hopping amplitude")->capture_default_str();
    cmd->add_option("--delta-min", delta_min, "Pairing axis start")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--delta-max", delta_max, "Pairing axis end")->capture_default_str();
    cmd->add_option("--delta-count", delta_count, "Pairing axis points")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--mu-min", mu_min, "Chemical potential axis start")->capture_default_str();
    cmd->add_option("--mu-max", mu_max, "Chemical potential axis end")->capture_default_str();
    cmd->add_option("--mu-count", mu_count, "Chemical potential axis points")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--energy-tol", energy_tol, "Zero-mode energy tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--strict", strict, "Also require eps2 > 10 * energy-tol")
        ->capture_default_str();
  }

  majorana::GridSpec grid() const {
    return {sites,  t,        delta_min, delta_max, delta_count,
            mu_min, mu_max,   mu_count,  energy_tol, strict};
  }

  void describe(json& cfg) const {
    cfg["sites"] = sites;
    cfg["t"] = t;
    cfg["delta-min"] = delta_min;
    cfg["delta-max"] = delta_max;
    cfg["delta-count"] = delta_count;
    cfg["mu-min"] = mu_min;
    cfg["mu-max"] = mu_max;
    cfg["mu-count"] = mu_count;
    cfg["energy-tol"] = energy_tol;
    cfg["strict"] = strict;
  }
};

struct CommonFlags {
  std::string out = "-";
  int threads = 0;

  void attach_out(CLI::App* cmd) {
    cmd->add_option("--out", out, "Output path ('-' = stdout)")->capture_default_str();
  }
  void attach_threads(CLI::App* cmd) {
    cmd->add_option("--threads", threads,
                    "Worker threads (0 = MAJORANA_THREADS or hardware)")
        ->check(CLI::Range(0, 4096))
        ->capture_default_str();
  }
};

void enable_json_config(CLI::App* cmd) {
  cmd->add_option("--config", "JSON file with option values (flags override)");
}

// ---- spectrum ----

struct SpectrumCmd {
  ChainOpts chain;
  CommonFlags common;
  double zero_tol = 1e-12;

  void attach(CLI::App* cmd) {
    chain.attach(cmd);
    cmd->add_option("--zero-tol", zero_tol, "Canonical zero-block tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    const auto canon =
        majorana::canonicalize(majorana::build_majorana_matrix(chain.params(), chain.potentials()),
                               zero_tol);
    json cfg;
    chain.describe(cfg);
    cfg["zero-tol"] = zero_tol;
    std::ofstream file;
    majorana::io::write_spectrum_csv(open_output(common.out, file), canon, cfg);
    return 0;
  }
};

// ---- zero-modes ----

struct ZeroModesCmd {
  ChainOpts chain;
  CommonFlags common;
  double energy_tol = 0.002;

  void attach(CLI::App* cmd) {
    chain.attach(cmd);
    cmd->add_option("--energy-tol", energy_tol, "Zero-mode energy tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    const auto canon = majorana::canonicalize(
        majorana::build_majorana_matrix(chain.params(), chain.potentials()));
    const auto pair = majorana::extract_zero_modes(canon, energy_tol);
    json cfg;
    chain.describe(cfg);
    cfg["energy-tol"] = energy_tol;
    std::ofstream file;
    majorana::io::write_zero_modes_csv(open_output(common.out, file), pair, cfg);
    return 0;
  }
};

// ---- density ----

struct DensityCmd {
  ChainOpts chain;
  CommonFlags common;
  double energy_tol = 0.002;

  void attach(CLI::App* cmd) {
    chain.attach(cmd);
    cmd->add_option("--energy-tol", energy_tol, "Excitation-gap tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    const auto canon = majorana::canonicalize(
        majorana::build_majorana_matrix(chain.params(), chain.potentials()));
    const auto report = majorana::ground_state_report(canon, energy_tol);
    json cfg;
    chain.describe(cfg);
    cfg["energy-tol"] = energy_tol;
    std::ofstream file;
    majorana::io::write_density_json(open_output(common.out, file), report, cfg);
    return 0;
  }
};

// ---- phase-scan ----

struct PhaseScanCmd {
  GridOpts grid;
  CommonFlags common;

  void attach(CLI::App* cmd) {
    grid.attach(cmd);
    common.attach_threads(cmd);
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    const auto points = majorana::scan_phase(grid.grid(), common.threads);
    json cfg;
    grid.describe(cfg);
    std::ofstream file;
    majorana::io::write_phase_scan_csv(open_output(common.out, file), points, false, cfg);
    return 0;
  }
};

// ---- noise-scan ----

struct NoiseScanCmd {
  GridOpts grid;
  CommonFlags common;
  double v0 = 1.0;
  int seeds = 25;
  std::uint64_t base_seed = 1;
  std::string noise_mode = "fresh";
  double majority = 0.5;

  void attach(CLI::App* cmd) {
    grid.sites = 31;
    grid.delta_count = 20;
    grid.mu_count = 40;
    grid.attach(cmd);
    cmd->add_option("--v0", v0, "Disorder amplitude")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--seeds", seeds, "Disorder realizations per cell")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    cmd->add_option("--base-seed", base_seed, "Base seed for all draws")->capture_default_str();
    cmd->add_option("--noise-mode", noise_mode,
                    "fresh = new draw per (cell, seed); fixed = same draws for every cell")
        ->check(CLI::IsMember({"fresh", "fixed"}))
        ->capture_default_str();
    cmd->add_option("--majority", majority,
                    "Survival fraction a cell must exceed to keep its zero mode")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    common.attach_threads(cmd);
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    const auto mode = noise_mode == "fixed" ? majorana::NoiseMode::fixed_across_grid
                                            : majorana::NoiseMode::fresh_per_cell;
    const auto points = majorana::scan_with_noise(grid.grid(), v0, seeds, base_seed, mode,
                                                  common.threads, majority);
    json cfg;
    grid.describe(cfg);
    cfg["v0"] = v0;
    cfg["seeds"] = seeds;
    cfg["base-seed"] = base_seed;
    cfg["noise-mode"] = noise_mode;
    cfg["majority"] = majority;
    std::ofstream file;
    majorana::io::write_phase_scan_csv(open_output(common.out, file), points, true, cfg);
    return 0;
  }
};

// ---- dot-sweep ----

struct DotSweepCmd {
  ChainOpts chain;
  CommonFlags common;
  double v_min = -2.6, v_max = 3.4;
  int v_count = 601;
  double scale = 0.1;
  bool no_clamp = false;
  bool exact = false;
  double energy_tol = 0.002;

  void attach(CLI::App* cmd) {
    chain.delta = 0.8;
    chain.mu = 0.4;
    chain.attach(cmd);
    cmd->add_option("--v-min", v_min, "Dot bias axis start")->capture_default_str();
    cmd->add_option("--v-max", v_max, "Dot bias axis end")->capture_default_str();
    cmd->add_option("--v-count", v_count, "Dot bias axis points")
        ->check(CLI::Range(1, 10000000))
        ->capture_default_str();
    cmd->add_option("--scale", scale, "Chain-dot coupling scale")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_flag("--no-clamp", no_clamp, "Keep bias points with e_plus past the gap")
        ->capture_default_str();
    cmd->add_flag("--exact", exact, "Also diagonalize the extended chain per point")
        ->capture_default_str();
    cmd->add_option("--energy-tol", energy_tol, "Excitation-gap tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    common.attach_threads(cmd);
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    majorana::DotSweepSpec spec;
    spec.chain = chain.params();
    spec.v_min = v_min;
    spec.v_max = v_max;
    spec.v_count = v_count;
    spec.coupling_scale = scale;
    spec.clamp_to_gap = !no_clamp;
    spec.compute_exact = exact;
    spec.energy_tol = energy_tol;
    const auto sweep = majorana::sweep_bias(spec, common.threads);
    json cfg;
    chain.describe(cfg);
    cfg["v-min"] = v_min;
    cfg["v-max"] = v_max;
    cfg["v-count"] = v_count;
    cfg["scale"] = scale;
    cfg["no-clamp"] = no_clamp;
    cfg["exact"] = exact;
    cfg["energy-tol"] = energy_tol;
    std::ofstream file;
    majorana::io::write_dot_sweep_csv(open_output(common.out, file), sweep, exact, cfg);
    return 0;
  }
};

// ---- oracle-check ----

struct OracleCheckCmd {
  CommonFlags common;
  int max_sites = 7;
  int trials = 25;
  std::uint64_t seed = 20260819;
  double tol = 1e-9;
  double noise_v0 = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-sites", max_sites, "Largest chain length drawn")
        ->check(CLI::Range(2, majorana::fock_max_sites))
        ->capture_default_str();
    cmd->add_option("--trials", trials, "Number of random draws")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Draw seed")->capture_default_str();
    cmd->add_option("--tol", tol, "Maximum allowed deviation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--noise-v0", noise_v0, "Disorder amplitude shared by both sides")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    common.attach_out(cmd);
    enable_json_config(cmd);
  }

  int run() const {
    json cfg;
    cfg["max-sites"] = max_sites;
    cfg["trials"] = trials;
    cfg["seed"] = seed;
    cfg["tol"] = tol;
    cfg["noise-v0"] = noise_v0;
    std::ofstream file;
    std::ostream& os = open_output(common.out, file);
    majorana::io::write_prelude(os, "majorana-oracle-check", cfg);
    os << "trial,n_sites,t,delta,theta,mu,degenerate,parity_ok,dev_energy,dev_density,"
          "dev_spectrum\n";
    bool all_ok = true;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const auto trial =
          majorana::run_oracle_trial(seed, static_cast<std::uint64_t>(i), max_sites, noise_v0);
      all_ok = all_ok && trial.within(tol);
      worst = std::max({worst, trial.dev_energy, trial.dev_density, trial.dev_spectrum});
      os << i << "," << trial.params.n_sites << "," << fmt17(trial.params.t) << ","
         << fmt17(trial.params.delta_abs) << "," << fmt17(trial.params.theta) << ","
         << fmt17(trial.params.mu) << "," << (trial.degenerate ? 1 : 0) << ","
         << (trial.parity_ok ? 1 : 0) << "," << fmt17(trial.dev_energy) << ","
         << fmt17(trial.dev_density) << "," << fmt17(trial.dev_spectrum) << "\n";
    }
    os << "# max_dev: " << fmt17(worst) << "\n";
    os << "# all_within_tol: " << (all_ok ? 1 : 0) << "\n";
    return all_ok ? 0 : 3;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana chain toolkit: canonical forms, phase diagrams, dot sweeps"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  SpectrumCmd spectrum;
  spectrum.attach(app.add_subcommand("spectrum", "Quasiparticle energies of one chain"));
  ZeroModesCmd zero_modes;
  zero_modes.attach(
      app.add_subcommand("zero-modes", "Localized end-mode pair of one chain"));
  DensityCmd density;
  density.attach(
      app.add_subcommand("density", "Ground-state energy, gap, parity, site densities"));
  PhaseScanCmd phase_scan;
  phase_scan.attach(app.add_subcommand("phase-scan", "Clean (delta, mu) phase diagram"));
  NoiseScanCmd noise_scan;
  noise_scan.attach(
      app.add_subcommand("noise-scan", "Disordered phase diagram with survival fractions"));
  DotSweepCmd dot_sweep;
  dot_sweep.attach(
      app.add_subcommand("dot-sweep", "Quantum-dot bias sweep against the chain end"));
  OracleCheckCmd oracle_check;
  oracle_check.attach(
      app.add_subcommand("oracle-check", "Randomized cross-validation against brute force"));

  try {
    std::vector<std::string> args =
        with_config_defaults(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand("spectrum")) return spectrum.run();
    if (app.got_subcommand("zero-modes")) return zero_modes.run();
    if (app.got_subcommand("density")) return density.run();
    if (app.got_subcommand("phase-scan")) return phase_scan.run();
    if (app.got_subcommand("noise-scan")) return noise_scan.run();
    if (app.got_subcommand("dot-sweep")) return dot_sweep.run();
    if (app.got_subcommand("oracle-check")) return oracle_check.run();
  } catch (const majorana::empty_result_error& e) {
    std::cerr << "error (empty result): " << e.what() << "\n";
    return 4;
  } catch (const majorana::numerical_error& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
