// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "talbot/decoherence.hpp"
#include "talbot/dynamics.hpp"
#include "talbot/grating.hpp"
#include "talbot/materials.hpp"
#include "talbot/thermal.hpp"

namespace talbot::cli {

struct ScanSpec {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  std::vector<double> grid() const;
};

// Fully resolved experiment; every run starts from the built-in defaults
// (the proposed-experiment parameter set) and overlays the config file and
// command-line overrides.
class Experiment {
 public:
  Experiment() = default;
  // material_ may point into custom_material_, so copies rebind it.
  Experiment(const Experiment& other)
      : resolved_(other.resolved_), custom_material_(other.custom_material_) {
    material_ = custom_material_ ? &*custom_material_ : other.material_;
  }
  Experiment& operator=(const Experiment& other) {
    resolved_ = other.resolved_;
    custom_material_ = other.custom_material_;
    material_ = custom_material_ ? &*custom_material_ : other.material_;
    return *this;
  }

  static nlohmann::json default_config();
  static Experiment from_json(const nlohmann::json& merged);

  const nlohmann::json& resolved() const { return resolved_; }

  const Material& material() const { return *material_; }
  Particle particle() const;
  SourceState source() const;
  Timeline timeline() const;
  GratingPulse pulse() const;
  GratingConfig grating_config() const;
  Environment environment() const;
  CslParams csl() const;
  ChannelToggles channels() const;
  TemperatureProfile internal_temperature() const;
  AccelerationProfile acceleration() const;

  double phi0() const;
  std::optional<ScanSpec> scan() const;
  int points_per_period() const;
  double half_periods() const;

  // Applies a scan value: returns a copy with the variable overridden.
  Experiment with_value(const std::string& variable, double value) const;

 private:
  nlohmann::json resolved_;
  const Material* material_ = nullptr;
  std::optional<Material> custom_material_;

  void bind_material();
};

// Deep-merges `overlay` into `base` (objects recursively, scalars replaced).
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overlay);

// Loads the file (when non-empty), merges over defaults, validates.
Experiment load_experiment(const std::string& config_path, const nlohmann::json& overrides);

}  // namespace talbot::cli
