// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <cmath>
#include <fstream>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot::cli {

namespace {

using nlohmann::json;
namespace k = talbot::constants;

double require_positive(const json& j, const std::string& path, double v) {
  (void)j;
  if (!(v > 0.0)) throw config_error("value must be positive", path);
  return v;
}

double get_num(const json& node, const std::string& key, const std::string& path) {
  if (!node.contains(key)) throw config_error("missing field", path);
  const auto& v = node.at(key);
  if (!v.is_number()) throw config_error("expected a number", path);
  return v.get<double>();
}

}  // namespace

std::vector<double> ScanSpec::grid() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    double f = steps > 1 ? static_cast<double>(i) / (steps - 1) : 0.0;
    out.push_back(start + (stop - start) * f);
  }
  return out;
}

json Experiment::default_config() {
  json j;
  j["particle"] = {{"mass_kg", 1e6 * k::atomic_mass_unit},
                   {"material", "silicon"},
                   {"internal_temperature_K", 300.0}};
  j["trap"] = {{"frequency_Hz", 2.0e5}, {"temperature_K", 0.02},   {"power_W", 0.053},
               {"waist_m", 8.6e-7},     {"wavelength_m", 1.55e-6}, {"intensity_W_m2", 9.0e10},
               {"responsivity_A_W", 1.0}, {"averaging_periods", 100}};
  j["source"] = {{"model", "exact"}};
  j["grating"] = {{"wavelength_m", 3.55e-7},
                  {"phi0_rad", k::pi},
                  {"spot_area_m2", k::pi * 0.03 * 0.03}};
  j["grating_model"] = {{"classical", false},
                        {"include_absorption", true},
                        {"include_scattering", true}};
  j["timeline"] = {{"t1_s", 0.160}, {"t2_s", 0.126}};
  j["environment"] = {{"temperature_K", 300.0},
                      {"gas_pressure_Pa", 1e-8},
                      {"gas_mass_kg", 28.0 * k::atomic_mass_unit},
                      {"gas_polarizability_SI", 1.74e-30 * 4.0 * k::pi * k::vacuum_permittivity},
                      {"gas_ionization_J", 15.6 * k::elementary_charge}};
  j["decoherence"] = {{"collision", true}, {"absorption", true}, {"scattering", true},
                      {"emission", true},  {"csl", false},       {"emission_profile", "constant"}};
  j["csl"] = {{"localization_length_m", 1e-7}, {"rate_Hz", 1.4e-11}};
  j["acceleration"] = json::array();
  j["grid"] = {{"points_per_period", 512}, {"half_periods", 2.0}};
  j["heating"] = {{"initial_temperature_K", 300.0},
                  {"phases", json::array({json{{"duration_s", 1.0},
                                               {"intensity_W_m2", 9.0e10},
                                               {"wavelength_m", 1.55e-6}},
                                          json{{"duration_s", 0.286},
                                               {"intensity_W_m2", 0.0},
                                               {"wavelength_m", 1.55e-6}}})}};
  j["surface"] = {{"phi0", {{"start", 0.0}, {"stop", 4.0 * k::pi}, {"steps", 64}}},
                  {"t2", {{"start", 0.01}, {"stop", 0.16}, {"steps", 64}}}};
  j["decoherence_map"] = {{"t_int", {{"start", 300.0}, {"stop", 2000.0}, {"steps", 24}}},
                          {"time", {{"start", 0.05}, {"stop", 1.0}, {"steps", 24}}},
                          {"t1_over_t2", 1.25}};
  j["detection"] = {{"window_m", 1e-5}};
  return j;
}

json merge_config(json base, const json& overlay) {
  if (!overlay.is_object() || !base.is_object()) return overlay;
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object()) {
      base[it.key()] = merge_config(base[it.key()], it.value());
    } else {
      base[it.key()] = it.value();
    }
  }
  return base;
}

void Experiment::bind_material() {
  const auto& pj = resolved_.at("particle");
  const auto& mj = pj.at("material");
  if (mj.is_string()) {
    std::string name = mj.get<std::string>();
    if (name == "silicon") {
      material_ = &Material::silicon();
    } else if (name == "silica") {
      material_ = &Material::silica();
    } else {
      throw config_error("unknown material '" + name + "' (use silicon, silica, or an object)",
                         "particle.material");
    }
  } else if (mj.is_object()) {
    Material::Properties props;
    props.density = require_positive(mj, "particle.material.density_kg_m3",
                                     get_num(mj, "density_kg_m3", "particle.material.density_kg_m3"));
    props.specific_heat =
        require_positive(mj, "particle.material.specific_heat_J_kgK",
                         get_num(mj, "specific_heat_J_kgK", "particle.material.specific_heat_J_kgK"));
    props.ionization_energy =
        require_positive(mj, "particle.material.ionization_energy_J",
                         get_num(mj, "ionization_energy_J", "particle.material.ionization_energy_J"));
    if (mj.contains("static_permittivity")) {
      props.static_permittivity = mj.at("static_permittivity").get<double>();
    }
    if (!mj.contains("spectrum_csv")) {
      throw config_error("missing field", "particle.material.spectrum_csv");
    }
    std::string csv = mj.at("spectrum_csv").get<std::string>();
    std::string name = mj.contains("name") ? mj.at("name").get<std::string>() : "custom";
    custom_material_ = load_spectrum_file(csv, name, props);
    material_ = &*custom_material_;
  } else {
    throw config_error("material must be a name or an object", "particle.material");
  }
}

Experiment Experiment::from_json(const json& merged) {
  Experiment e;
  e.resolved_ = merged;

  const auto& pj = merged.at("particle");
  bool has_mass = pj.contains("mass_kg");
  bool has_radius = pj.contains("radius_m");
  if (has_mass == has_radius) {
    throw config_error("exactly one of mass_kg or radius_m must be given", "particle");
  }
  const auto& gj = merged.at("grating");
  bool has_phi0 = gj.contains("phi0_rad");
  bool has_energy = gj.contains("pulse_energy_J");
  if (has_phi0 == has_energy) {
    throw config_error("exactly one of phi0_rad or pulse_energy_J must be given", "grating");
  }
  require_positive(merged, "grating.wavelength_m", get_num(gj, "wavelength_m", "grating.wavelength_m"));
  require_positive(merged, "grating.spot_area_m2", get_num(gj, "spot_area_m2", "grating.spot_area_m2"));
  const auto& tj = merged.at("timeline");
  require_positive(merged, "timeline.t1_s", get_num(tj, "t1_s", "timeline.t1_s"));
  require_positive(merged, "timeline.t2_s", get_num(tj, "t2_s", "timeline.t2_s"));
  const auto& ej = merged.at("environment");
  if (get_num(ej, "gas_pressure_Pa", "environment.gas_pressure_Pa") < 0.0) {
    throw config_error("gas pressure must be non-negative", "environment.gas_pressure_Pa");
  }
  if (merged.contains("scan")) {
    e.scan();  // validates
  }

  e.bind_material();
  return e;
}

Particle Experiment::particle() const {
  const auto& pj = resolved_.at("particle");
  double t_int = pj.value("internal_temperature_K", 300.0);
  if (pj.contains("mass_kg")) {
    return Particle::from_mass(pj.at("mass_kg").get<double>(), *material_, t_int);
  }
  return Particle::from_radius(pj.at("radius_m").get<double>(), *material_, t_int);
}

SourceState Experiment::source() const {
  const auto& tj = resolved_.at("trap");
  TrapModel model = resolved_.at("source").value("model", "exact") == std::string("classical")
                        ? TrapModel::classical
                        : TrapModel::exact;
  return trap_state(particle().mass, tj.at("frequency_Hz").get<double>(),
                    tj.at("temperature_K").get<double>(), model);
}

Timeline Experiment::timeline() const {
  const auto& tj = resolved_.at("timeline");
  double d = resolved_.at("grating").at("wavelength_m").get<double>() / 2.0;
  return make_timeline(tj.at("t1_s").get<double>(), tj.at("t2_s").get<double>(), particle().mass, d);
}

double Experiment::phi0() const {
  const auto& gj = resolved_.at("grating");
  if (gj.contains("phi0_rad")) return gj.at("phi0_rad").get<double>();
  return phase_amplitude(particle(), gj.at("pulse_energy_J").get<double>(),
                         gj.at("spot_area_m2").get<double>(), gj.at("wavelength_m").get<double>());
}

GratingPulse Experiment::pulse() const {
  const auto& gj = resolved_.at("grating");
  double lambda = gj.at("wavelength_m").get<double>();
  double area = gj.at("spot_area_m2").get<double>();
  double energy;
  if (gj.contains("pulse_energy_J")) {
    energy = gj.at("pulse_energy_J").get<double>();
  } else {
    double per_joule = phase_amplitude(particle(), 1.0, area, lambda);
    energy = gj.at("phi0_rad").get<double>() / per_joule;
  }
  return make_grating_pulse(particle(), lambda, energy, area);
}

GratingConfig Experiment::grating_config() const {
  const auto& mj = resolved_.at("grating_model");
  GratingConfig c;
  c.mode = mj.value("classical", false) ? GratingMode::classical : GratingMode::quantum;
  c.include_absorption = mj.value("include_absorption", true);
  c.include_scattering = mj.value("include_scattering", true);
  return c;
}

Environment Experiment::environment() const {
  const auto& ej = resolved_.at("environment");
  Environment env;
  env.temperature = ej.at("temperature_K").get<double>();
  env.gas_pressure = ej.at("gas_pressure_Pa").get<double>();
  env.gas_mass = ej.at("gas_mass_kg").get<double>();
  env.gas_polarizability = ej.at("gas_polarizability_SI").get<double>();
  env.gas_ionization = ej.at("gas_ionization_J").get<double>();
  return env;
}

CslParams Experiment::csl() const {
  const auto& cj = resolved_.at("csl");
  return CslParams{cj.at("localization_length_m").get<double>(), cj.at("rate_Hz").get<double>()};
}

ChannelToggles Experiment::channels() const {
  const auto& dj = resolved_.at("decoherence");
  ChannelToggles t;
  t.collision = dj.value("collision", true);
  t.absorption = dj.value("absorption", true);
  t.scattering = dj.value("scattering", true);
  t.emission = dj.value("emission", true);
  t.csl = dj.value("csl", false);
  return t;
}

TemperatureProfile Experiment::internal_temperature() const {
  const auto& dj = resolved_.at("decoherence");
  double t0 = resolved_.at("particle").value("internal_temperature_K", 300.0);
  if (dj.value("emission_profile", "constant") == std::string("evolved")) {
    Timeline tl = timeline();
    auto evolved = evolve_temperature(particle(), {{tl.total(), 0.0, 1.55e-6}}, t0,
                                      resolved_.at("environment").at("temperature_K").get<double>());
    return TemperatureProfile::from_timeline(evolved);
  }
  return TemperatureProfile::constant(t0);
}

AccelerationProfile Experiment::acceleration() const {
  std::vector<std::pair<double, double>> segs;
  for (const auto& seg : resolved_.at("acceleration")) {
    segs.emplace_back(seg.at("duration_s").get<double>(), seg.at("value_m_s2").get<double>());
  }
  return AccelerationProfile(segs);
}

std::optional<ScanSpec> Experiment::scan() const {
  if (!resolved_.contains("scan")) return std::nullopt;
  const auto& sj = resolved_.at("scan");
  ScanSpec s;
  s.variable = sj.at("variable").get<std::string>();
  static const char* known[] = {"phi0", "t1", "t2", "pulse_energy", "gas_pressure"};
  bool ok = false;
  for (const char* v : known) ok = ok || s.variable == v;
  if (!ok) throw config_error("unknown scan variable '" + s.variable + "'", "scan.variable");
  s.start = get_num(sj, "start", "scan.start");
  s.stop = get_num(sj, "stop", "scan.stop");
  s.steps = static_cast<int>(get_num(sj, "steps", "scan.steps"));
  if (s.steps < 2) throw config_error("scan needs at least 2 steps", "scan.steps");
  return s;
}

int Experiment::points_per_period() const {
  return resolved_.at("grid").at("points_per_period").get<int>();
}

double Experiment::half_periods() const {
  return resolved_.at("grid").at("half_periods").get<double>();
}

Experiment Experiment::with_value(const std::string& variable, double value) const {
  json j = resolved_;
  if (variable == "phi0") {
    j["grating"].erase("pulse_energy_J");
    j["grating"]["phi0_rad"] = value;
  } else if (variable == "pulse_energy") {
    j["grating"].erase("phi0_rad");
    j["grating"]["pulse_energy_J"] = value;
  } else if (variable == "t1") {
    j["timeline"]["t1_s"] = value;
  } else if (variable == "t2") {
    j["timeline"]["t2_s"] = value;
  } else if (variable == "gas_pressure") {
    j["environment"]["gas_pressure_Pa"] = value;
  } else {
    throw config_error("unknown scan variable '" + variable + "'", "scan.variable");
  }
  return from_json(j);
}

Experiment load_experiment(const std::string& config_path, const json& overrides) {
  json merged = Experiment::default_config();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw config_error("cannot open config file '" + config_path + "'", "config");
    json user;
    try {
      in >> user;
    } catch (const json::exception& ex) {
      throw config_error(std::string("invalid JSON: ") + ex.what(), "config");
    }
    // A user particle/grating choice replaces the default alternative.
    if (user.contains("particle") && user["particle"].contains("radius_m") &&
        !user["particle"].contains("mass_kg")) {
      merged["particle"].erase("mass_kg");
    }
    if (user.contains("grating") && user["grating"].contains("pulse_energy_J") &&
        !user["grating"].contains("phi0_rad")) {
      merged["grating"].erase("phi0_rad");
    }
    merged = merge_config(merged, user);
  }
  if (!overrides.is_null() && overrides.is_object()) {
    if (overrides.contains("grating") && overrides["grating"].contains("pulse_energy_J")) {
      merged["grating"].erase("phi0_rad");
    }
    merged = merge_config(merged, overrides);
  }
  return Experiment::from_json(merged);
}

}  // namespace talbot::cli
