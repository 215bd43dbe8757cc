// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "talbot/materials.hpp"

namespace talbot {

// One trapping/flight phase: intensity 0 means free fall (laser off).
struct ThermalPhase {
  double duration;    // s
  double intensity;   // W/m^2
  double wavelength;  // m, trap laser wavelength (ignored when intensity = 0)
};

struct ThermalSample {
  double time;         // s, from the start of the first phase
  double temperature;  // K
};

struct ThermalTimeline {
  std::vector<ThermalPhase> phases;
  double initial_temperature;
  double environment_temperature;
  std::vector<ThermalSample> samples;
};

// m c_m dT/dt = laser absorption + blackbody absorption - thermal emission.
double heating_rhs(const Particle& particle, double intensity, double wavelength,
                   double t_env, double t_int);

// Adaptive embedded Dormand-Prince integration of the rate-balance equation,
// restarted at phase boundaries, >= 200 samples per phase.
ThermalTimeline evolve_temperature(const Particle& particle, std::vector<ThermalPhase> phases,
                                   double initial_temperature, double environment_temperature,
                                   double rel_tol = 1e-6, double abs_tol = 1e-3);

// Root of heating_rhs in T_int, by bisection on [t_env, 5000 K].
double equilibrium_temperature(const Particle& particle, double intensity, double wavelength,
                               double t_env);

// T_int(t), either constant or linearly interpolated thermal-timeline samples.
class TemperatureProfile {
 public:
  static TemperatureProfile constant(double temperature);
  // time_offset maps profile-local time to the timeline samples.
  static TemperatureProfile from_timeline(const ThermalTimeline& timeline, double time_offset = 0.0);

  double operator()(double time) const;
  bool is_constant() const { return samples_.empty(); }
  double constant_value() const { return constant_; }

 private:
  double constant_ = 0.0;
  double offset_ = 0.0;
  std::vector<ThermalSample> samples_;
};

}  // namespace talbot
