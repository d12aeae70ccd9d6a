#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "majorana/canonical.hpp"
#include "majorana/chain.hpp"
#include "majorana/io.hpp"
#include "support/cli_runner.hpp"

using namespace majorana;
using testsupport::CliResult;
using testsupport::TempDir;
using testsupport::read_file;
using testsupport::run_cli;
using testsupport::strip_lines_containing;

TEST_CASE("seventeen digit formatting round-trips and pins non-finite spellings") {
  REQUIRE(io::fmt17(0.1) == "0.10000000000000001");
  REQUIRE(io::fmt17(1.0) == "1");
  REQUIRE(io::fmt17(-2.5e-300) == "-2.5e-300");
  REQUIRE(io::fmt17(1.0 / 3.0) == "0.33333333333333331");
  REQUIRE(io::fmt17(std::numeric_limits<double>::quiet_NaN()) == "nan");
  REQUIRE(io::fmt17(std::numeric_limits<double>::infinity()) == "inf");
  REQUIRE(io::fmt17(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -7.29e-10}) {
    REQUIRE(std::stod(io::fmt17(x)) == x);
  }
}

TEST_CASE("writers emit the prelude and the advertised shapes") {
  ChainParams p;
  p.n_sites = 3;
  p.delta_abs = 0.8;
  p.mu = 0.4;
  const CanonicalForm canon = canonicalize(build_majorana_matrix(p));

  std::ostringstream spectrum;
  io::write_spectrum_csv(spectrum, canon, io::json{{"sites", 3}});
  const std::string text = spectrum.str();
  REQUIRE(text.rfind("# format: majorana-spectrum v1\n", 0) == 0);
  REQUIRE(text.find("# timestamp: ") != std::string::npos);
  REQUIRE(text.find("# config: {\"sites\":3}") != std::string::npos);
  REQUIRE(text.find("index,value\n") != std::string::npos);
  REQUIRE(text.find("\n1,") != std::string::npos);
  REQUIRE(text.find("\n3,") != std::string::npos);

  std::ostringstream density;
  io::write_density_json(density, ground_state_report(canon), io::json{{"sites", 3}});
  const io::json parsed = io::json::parse(density.str());
  REQUIRE(parsed.at("format") == "majorana-density v1");
  REQUIRE(parsed.at("parity").is_number_integer());
  REQUIRE(parsed.at("densities").size() == 3);
  REQUIRE(parsed.at("config").at("sites") == 3);

  // an undefined gap serializes as null
  ChainParams tiny;
  tiny.mu = 1e-5;
  std::ostringstream tiny_report;
  io::write_density_json(tiny_report, ground_state_report(canonicalize(build_majorana_matrix(tiny))));
  REQUIRE(io::json::parse(tiny_report.str()).at("gap").is_null());
}

TEST_CASE("cli: exit codes separate usage, numerics, and empty results") {
  TempDir dir;
  REQUIRE(run_cli("spectrum --sites 5 --delta 1 --mu 0", dir).exit_code == 0);
  REQUIRE(run_cli("spectrum --no-such-flag", dir).exit_code == 2);
  REQUIRE(run_cli("spectrum --sites 0", dir).exit_code == 2);
  REQUIRE(run_cli("", dir).exit_code == 2);  // a subcommand is required
  // trivial phase: no zero mode to extract
  REQUIRE(run_cli("zero-modes --sites 20 --delta 0.2 --mu 2.5", dir).exit_code == 4);
  // every bias point clamped away
  REQUIRE(run_cli("dot-sweep --sites 10 --v-min 80 --v-max 90 --v-count 3 --scale 1", dir)
              .exit_code == 4);
  REQUIRE(run_cli("oracle-check --trials 2 --max-sites 4", dir).exit_code == 0);
}

TEST_CASE("cli: stdout and file output carry the same payload") {
  TempDir dir;
  const std::string args = "spectrum --sites 6 --delta 0.8 --mu 0.4";
  const CliResult to_stdout = run_cli(args, dir);
  REQUIRE(to_stdout.exit_code == 0);
  const std::string file_path = (dir.path() / "spectrum.csv").string();
  REQUIRE(run_cli(args + " --out " + file_path, dir).exit_code == 0);
  REQUIRE(strip_lines_containing(to_stdout.out, "timestamp") ==
          strip_lines_containing(read_file(file_path), "timestamp"));
}

TEST_CASE("cli: the config header reproduces the run and flags take precedence") {
  TempDir dir;
  const std::string base =
      "phase-scan --sites 9 --delta-min 0.3 --delta-max 0.9 --delta-count 2 "
      "--mu-min 0 --mu-max 1.5 --mu-count 3";
  const CliResult first = run_cli(base, dir);
  REQUIRE(first.exit_code == 0);

  // extract the config line and feed it back
  std::istringstream lines(first.out);
  std::string line, config_json;
  while (std::getline(lines, line)) {
    if (line.rfind("# config: ", 0) == 0) {
      config_json = line.substr(10);
      break;
    }
  }
  REQUIRE_FALSE(config_json.empty());
  const std::string config_path = (dir.path() / "run.json").string();
  {
    std::ofstream out(config_path);
    out << config_json << "\n";
  }
  const CliResult replay = run_cli("phase-scan --config " + config_path, dir);
  REQUIRE(replay.exit_code == 0);
  REQUIRE(strip_lines_containing(replay.out, "timestamp") ==
          strip_lines_containing(first.out, "timestamp"));

  // an explicit flag wins over the config file value
  const CliResult overridden =
      run_cli("phase-scan --config " + config_path + " --mu-count 2", dir);
  REQUIRE(overridden.exit_code == 0);
  REQUIRE(overridden.out.find("\"mu-count\":2") != std::string::npos);

  // unknown keys and missing files are usage errors
  const std::string bad_path = (dir.path() / "bad.json").string();
  {
    std::ofstream out(bad_path);
    out << "{\"no_such_key\":1}\n";
  }
  REQUIRE(run_cli("phase-scan --config " + bad_path, dir).exit_code == 2);
  REQUIRE(run_cli("phase-scan --config " + (dir.path() / "missing.json").string(), dir)
              .exit_code == 2);
}

TEST_CASE("cli: reruns are byte identical for any worker count") {
  TempDir dir;
  const std::string scan =
      "noise-scan --sites 10 --delta-min 0.2 --delta-max 1 --delta-count 3 "
      "--mu-min 0 --mu-max 2 --mu-count 4 --v0 1 --seeds 5 --base-seed 3";
  const CliResult one = run_cli(scan + " --threads 1", dir);
  const CliResult many = run_cli(scan + " --threads 5", dir);
  const CliResult via_env = run_cli(scan, dir, "MAJORANA_THREADS=2");
  REQUIRE(one.exit_code == 0);
  REQUIRE(many.exit_code == 0);
  REQUIRE(via_env.exit_code == 0);
  REQUIRE(strip_lines_containing(one.out, "timestamp") ==
          strip_lines_containing(many.out, "timestamp"));
  REQUIRE(strip_lines_containing(one.out, "timestamp") ==
          strip_lines_containing(via_env.out, "timestamp"));
  // the config header never records worker counts
  REQUIRE(one.out.find("threads") == std::string::npos);

  const std::string sweep =
      "dot-sweep --sites 12 --v-min -1 --v-max 1.4 --v-count 13 --scale 0.1 --exact";
  const CliResult sweep_one = run_cli(sweep + " --threads 1", dir);
  const CliResult sweep_many = run_cli(sweep + " --threads 3", dir);
  REQUIRE(sweep_one.exit_code == 0);
  REQUIRE(strip_lines_containing(sweep_one.out, "timestamp") ==
          strip_lines_containing(sweep_many.out, "timestamp"));
}

TEST_CASE("cli: zero-modes and density read back with the advertised columns") {
  TempDir dir;
  const CliResult modes = run_cli("zero-modes --sites 30 --delta 0.8 --mu 0.4", dir);
  REQUIRE(modes.exit_code == 0);
  REQUIRE(modes.out.find("# format: majorana-zero-modes v1") != std::string::npos);
  REQUIRE(modes.out.find("majorana_index,mode1,mode2") != std::string::npos);
  REQUIRE(modes.out.find("# localization: ") != std::string::npos);

  const CliResult density = run_cli("density --sites 3 --delta 0.8 --mu 0.4", dir);
  REQUIRE(density.exit_code == 0);
  const io::json parsed = io::json::parse(density.out);
  REQUIRE(parsed.at("energy").get<double>() == Catch::Approx(-1.8939313110342355).margin(1e-12));
  REQUIRE(parsed.at("parity") == 1);
  REQUIRE(parsed.at("densities").size() == 3);
  const double mid = parsed.at("densities").at(1).get<double>();
  REQUIRE(mid == Catch::Approx(0.5255393864331642).margin(1e-12));
}
