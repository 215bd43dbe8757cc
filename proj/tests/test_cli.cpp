// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/units.hpp"
#include "talbot/errors.hpp"

using nlohmann::json;
using namespace talbot;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int run(const std::string& args) {
  std::string cmd = std::string(TALBOTSIM_BINARY) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

int run_capture(const std::string& args, const std::string& log) {
  std::string cmd = std::string(TALBOTSIM_BINARY) + " " + args + " >" + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

const char* kTmp = "cli_scratch";

}  // namespace

TEST_CASE("unit-aware quantity parsing") {
  using cli::parse_quantity;
  CHECK(parse_quantity("126ms", "t") == doctest::Approx(0.126).epsilon(1e-15));
  CHECK(parse_quantity("177.5nm", "d") == doctest::Approx(177.5e-9).epsilon(1e-15));
  CHECK(parse_quantity("1e-10mbar", "p") == doctest::Approx(1e-8).epsilon(1e-15));
  CHECK(parse_quantity("1e6amu", "m") == doctest::Approx(1.66053906660e-21).epsilon(1e-12));
  CHECK(parse_quantity("4pi", "phi") == doctest::Approx(4.0 * 3.14159265358979).epsilon(1e-12));
  CHECK(parse_quantity("500uJ", "E") == doctest::Approx(5e-4).epsilon(1e-15));
  CHECK(parse_quantity("0.5", "x") == 0.5);
  CHECK(parse_quantity(" 2.5 mm ", "x") == doctest::Approx(2.5e-3).epsilon(1e-15));
  CHECK_THROWS_AS(parse_quantity("12parsec", "x"), config_error);
  CHECK_THROWS_AS(parse_quantity("oops", "x"), config_error);
}

TEST_CASE("config merging, defaults, and validation") {
  json defaults = cli::Experiment::default_config();
  CHECK(defaults["particle"]["mass_kg"].get<double>() == doctest::Approx(1.66053906660e-21));

  SUBCASE("defaults resolve to a runnable experiment") {
    cli::Experiment exp = cli::Experiment::from_json(defaults);
    CHECK(exp.particle().radius == doctest::Approx(5.5419e-9).epsilon(1e-4));
    CHECK(exp.timeline().t1 == 0.160);
    CHECK(exp.phi0() == doctest::Approx(3.14159265).epsilon(1e-8));
  }
  SUBCASE("radius replaces mass") {
    json j = defaults;
    j["particle"].erase("mass_kg");
    j["particle"]["radius_m"] = 5e-9;
    cli::Experiment exp = cli::Experiment::from_json(j);
    CHECK(exp.particle().mass > 0.0);
  }
  SUBCASE("mass and radius together are rejected with the field path") {
    json j = defaults;
    j["particle"]["radius_m"] = 5e-9;
    try {
      cli::Experiment::from_json(j);
      FAIL("expected config_error");
    } catch (const config_error& ex) {
      CHECK(ex.path() == "particle");
    }
  }
  SUBCASE("phi0 and pulse energy together are rejected") {
    json j = defaults;
    j["grating"]["pulse_energy_J"] = 1e-4;
    CHECK_THROWS_AS(cli::Experiment::from_json(j), config_error);
  }
  SUBCASE("unknown scan variable is rejected") {
    json j = defaults;
    j["scan"] = {{"variable", "banana"}, {"start", 0.0}, {"stop", 1.0}, {"steps", 10}};
    CHECK_THROWS_AS(cli::Experiment::from_json(j), config_error);
  }
  SUBCASE("pulse energy converts to phi0 consistently") {
    json j = defaults;
    j["grating"].erase("phi0_rad");
    j["grating"]["pulse_energy_J"] = 250e-6;
    cli::Experiment exp = cli::Experiment::from_json(j);
    // ~45.8 rad/mJ for the bundled silicon at a 30 mm waist
    CHECK(exp.phi0() == doctest::Approx(45.838256782312435 * 0.25).epsilon(1e-9));
    CHECK(exp.pulse().phi0 == doctest::Approx(exp.phi0()).epsilon(1e-12));
  }
  SUBCASE("with_value overrides a scan variable") {
    cli::Experiment exp = cli::Experiment::from_json(defaults);
    cli::Experiment e2 = exp.with_value("t2", 0.2);
    CHECK(e2.timeline().t2 == 0.2);
    CHECK(exp.timeline().t2 == 0.126);
  }
}

TEST_CASE("cli end-to-end") {
  REQUIRE(std::system((std::string("mkdir -p ") + kTmp).c_str()) == 0);

  SUBCASE("csl subcommand prints the bound") {
    std::string log = std::string(kTmp) + "/csl.log";
    int rc = run_capture("--out " + std::string(kTmp) + " csl --visibility-ratio 0.5", log);
    CHECK(rc == 0);
    std::string text = read_file(log);
    CHECK(text.find("lambda_CSL") != std::string::npos);
    // default proposed-experiment timeline: 1.38e-11 Hz, i.e. ~1.4e-11
    std::string csv = read_file(std::string(kTmp) + "/csl.csv");
    auto pos = csv.find("0.5,");
    REQUIRE(pos != std::string::npos);
    double bound = std::stod(csv.substr(pos + 4));
    CHECK(bound == doctest::Approx(1.4e-11).epsilon(0.03));
  }

  SUBCASE("pattern with phi0 = 0 is a constant density") {
    std::string cfg = std::string(kTmp) + "/flat.json";
    write_file(cfg, R"({"grating": {"phi0_rad": 0.0}, "grid": {"points_per_period": 32}})");
    CHECK(run("--config " + cfg + " --out " + kTmp + " pattern") == 0);
    std::istringstream csv(read_file(std::string(kTmp) + "/pattern.csv"));
    std::string line;
    std::getline(csv, line);  // header
    double first = -1.0;
    int rows = 0;
    while (std::getline(csv, line)) {
      double w = std::stod(line.substr(line.find(',') + 1));
      if (rows == 0) first = w;
      CHECK(w == doctest::Approx(first).epsilon(1e-12));
      ++rows;
    }
    CHECK(rows == 128);
  }

  SUBCASE("identical config and seed give byte-identical outputs") {
    std::string d1 = std::string(kTmp) + "/run1";
    std::string d2 = std::string(kTmp) + "/run2";
    REQUIRE(std::system(("mkdir -p " + d1 + " " + d2).c_str()) == 0);
    std::string args = "--seed 99 --scan phi0=0:4pi:9 visibility";
    CHECK(run("--out " + d1 + " " + args) == 0);
    CHECK(run("--out " + d2 + " " + args) == 0);
    CHECK(read_file(d1 + "/visibility.csv") == read_file(d2 + "/visibility.csv"));
    CHECK(read_file(d1 + "/visibility.meta.json") == read_file(d2 + "/visibility.meta.json"));
  }

  SUBCASE("meta sidecar carries the resolved config") {
    CHECK(run("--out " + std::string(kTmp) + " material-info --wavelength 1550nm") == 0);
    json meta = json::parse(read_file(std::string(kTmp) + "/material_info.meta.json"));
    CHECK(meta["command"] == "material-info");
    CHECK(meta["config"]["particle"]["material"] == "silicon");
    CHECK(meta["config"]["timeline"]["t1_s"].get<double>() == 0.160);
  }

  SUBCASE("config errors exit with code 2 and the field path") {
    std::string cfg = std::string(kTmp) + "/bad.json";
    write_file(cfg, R"({"particle": {"radius_m": 5e-9, "mass_kg": 1e-21}})");
    std::string log = std::string(kTmp) + "/bad.log";
    CHECK(run_capture("--config " + cfg + " pattern", log) == 2);
    CHECK(read_file(log).find("particle") != std::string::npos);
    write_file(cfg, "{ not json");
    CHECK(run("--config " + cfg + " pattern") == 2);
  }

  SUBCASE("channel selection flag") {
    std::string log = std::string(kTmp) + "/chan.log";
    CHECK(run_capture("--out " + std::string(kTmp) + " --channels col pattern", log) == 0);
    json meta = json::parse(read_file(std::string(kTmp) + "/pattern.meta.json"));
    CHECK(meta["config"]["decoherence"]["collision"] == true);
    CHECK(meta["config"]["decoherence"]["absorption"] == false);
    CHECK(run("--channels nonsense pattern") == 2);
  }

  SUBCASE("scan flag with units drives the visibility scan") {
    std::string dir = std::string(kTmp) + "/scandir";
    REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
    CHECK(run("--out " + dir + " --scan t2=50ms:150ms:5 visibility") == 0);
    std::istringstream csv(read_file(dir + "/visibility.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t2,visibility_quantum,visibility_classical");
    int rows = 0;
    std::string line;
    double first_t2 = 0.0, last_t2 = 0.0;
    while (std::getline(csv, line)) {
      if (rows == 0) first_t2 = std::stod(line);
      last_t2 = std::stod(line);
      ++rows;
    }
    CHECK(rows == 5);
    CHECK(first_t2 == doctest::Approx(0.050).epsilon(1e-12));
    CHECK(last_t2 == doctest::Approx(0.150).epsilon(1e-12));
  }

  SUBCASE("heating subcommand with a short custom phase list") {
    std::string cfg = std::string(kTmp) + "/heat.json";
    write_file(cfg, R"({"heating": {"initial_temperature_K": 300.0,
      "phases": [{"duration_s": 0.05, "intensity_W_m2": 9e10, "wavelength_m": 1.55e-6},
                 {"duration_s": 0.05, "intensity_W_m2": 0.0, "wavelength_m": 1.55e-6}]}})");
    CHECK(run("--config " + cfg + " --out " + kTmp + " heating") == 0);
    json meta = json::parse(read_file(std::string(kTmp) + "/heating.meta.json"));
    double t_final = meta["result"]["final_temperature_K"].get<double>();
    CHECK(t_final > 300.0);
    CHECK(t_final < 330.0);  // ~260 K/s for 50 ms, then isolated
    CHECK(meta["result"]["equilibrium_temperature_K"].get<double>() ==
          doctest::Approx(1600.0).epsilon(0.02));
  }
}
