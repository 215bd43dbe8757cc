// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/thermal.hpp"

using namespace talbot;
namespace k = talbot::constants;

namespace {

const double kMass = 1e6 * k::atomic_mass_unit;
const double kTrapIntensitySi = 9e10;    // 90 mW/um^2
const double kTrapIntensitySiO2 = 3e11;  // 300 mW/um^2
const double kTrapWavelength = 1.55e-6;

Particle silicon_particle(double t_int = 300.0) {
  return Particle::from_mass(kMass, Material::silicon(), t_int);
}
Particle silica_particle(double t_int = 300.0) {
  return Particle::from_mass(kMass, Material::silica(), t_int);
}

}  // namespace

TEST_CASE("heating rhs: silicon trap values") {
  Particle p = silicon_particle();
  double slope = heating_rhs(p, kTrapIntensitySi, kTrapWavelength, 300.0, 300.0);
  // laser term dominates at 300 K: I sigma_abs(1550 nm) / (m c_m)
  auto resp = optical_response(p, kTrapWavelength);
  double laser_only = kTrapIntensitySi * resp.sigma_abs / (p.mass * 700.0);
  CHECK(laser_only == doctest::Approx(260.494).epsilon(1e-4));
  CHECK(slope == doctest::Approx(laser_only).epsilon(5e-3));
  // lossless toy material, laser off, T_int = T_env: exactly zero
  std::vector<SpectrumPoint> pts{{1e-6, 2.0, 0.0}, {2e-4, 2.0, 0.0}};
  Material m("clear", std::move(pts), Material::Properties{2000.0, 700.0, 8e-19, 4.0});
  Particle q = Particle::from_radius(5e-9, m);
  CHECK(heating_rhs(q, 0.0, kTrapWavelength, 300.0, 300.0) == 0.0);
}

TEST_CASE("equilibrium temperature: silicon near 1600 K, rhs root") {
  Particle p = silicon_particle();
  double teq = equilibrium_temperature(p, kTrapIntensitySi, kTrapWavelength, 300.0);
  CHECK(teq == doctest::Approx(1599.8).epsilon(2e-3));
  CHECK(std::abs(heating_rhs(p, kTrapIntensitySi, kTrapWavelength, 300.0, teq)) < 1e-3);
}

TEST_CASE("silicon: constant heating in the trap, isolated after release") {
  Particle p = silicon_particle();
  std::vector<ThermalPhase> phases{{1.0, kTrapIntensitySi, kTrapWavelength},
                                   {0.286, 0.0, kTrapWavelength}};
  ThermalTimeline tl = evolve_temperature(p, phases, 300.0, 300.0);
  REQUIRE(tl.samples.size() >= 400);  // >= 200 per phase
  // monotone heating while trapped, no equilibrium reached within 1000 ms
  double t_release = 0.0;
  double teq = equilibrium_temperature(p, kTrapIntensitySi, kTrapWavelength, 300.0);
  double prev = tl.samples.front().temperature;
  for (const auto& s : tl.samples) {
    if (s.time <= 1.0) {
      CHECK(s.temperature >= prev - 1e-9);
      prev = s.temperature;
      t_release = s.temperature;
    }
  }
  CHECK(t_release > 450.0);
  CHECK(t_release < 650.0);
  CHECK(t_release < 0.9 * teq);
  // almost perfectly isolated in free fall: < 2% drop over 286 ms
  double t_final = tl.samples.back().temperature;
  CHECK(t_final <= t_release);
  CHECK((t_release - t_final) / t_release < 0.02);
}

TEST_CASE("silica: equilibrates in the trap, cools significantly after release") {
  Particle p = silica_particle();
  std::vector<ThermalPhase> phases{{1.0, kTrapIntensitySiO2, kTrapWavelength},
                                   {0.286, 0.0, kTrapWavelength}};
  ThermalTimeline tl = evolve_temperature(p, phases, 300.0, 300.0);
  double teq = equilibrium_temperature(p, kTrapIntensitySiO2, kTrapWavelength, 300.0);
  double t_release = 0.0;
  for (const auto& s : tl.samples) {
    if (s.time <= 1.0) t_release = s.temperature;
  }
  CHECK(t_release == doctest::Approx(teq).epsilon(0.01));
  double t_final = tl.samples.back().temperature;
  CHECK((t_release - t_final) / t_release > 0.15);
}

TEST_CASE("phase boundaries are hit exactly and the temperature is continuous") {
  Particle p = silicon_particle();
  std::vector<ThermalPhase> phases{{0.05, kTrapIntensitySi, kTrapWavelength},
                                   {0.05, 0.0, kTrapWavelength}};
  ThermalTimeline tl = evolve_temperature(p, phases, 300.0, 300.0);
  bool saw_boundary = false;
  for (std::size_t i = 0; i + 1 < tl.samples.size(); ++i) {
    CHECK(tl.samples[i + 1].time >= tl.samples[i].time);
    CHECK(std::abs(tl.samples[i + 1].temperature - tl.samples[i].temperature) < 1.0);
    if (std::abs(tl.samples[i].time - 0.05) < 1e-12) saw_boundary = true;
  }
  CHECK(saw_boundary);
  CHECK(tl.samples.back().time == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("integrator convergence: halving the tolerance") {
  Particle p = silicon_particle();
  std::vector<ThermalPhase> phases{{0.2, kTrapIntensitySi, kTrapWavelength}};
  double t1 = evolve_temperature(p, phases, 300.0, 300.0, 1e-6, 1e-3).samples.back().temperature;
  double t2 = evolve_temperature(p, phases, 300.0, 300.0, 5e-7, 5e-4).samples.back().temperature;
  CHECK(std::abs(t1 - t2) < 10.0 * 1e-6 * t1);
}

TEST_CASE("energy balance sign: emission cools when the laser is off") {
  Particle p = silicon_particle(1200.0);
  // T_env tiny: absorption ~ 0, so dT/dt < 0 from emission alone
  double rhs = heating_rhs(p, 0.0, kTrapWavelength, 1.0, 1200.0);
  CHECK(rhs < 0.0);
}

TEST_CASE("spectral-grid independence of the rhs") {
  // doubling the quadrature grid moves dT/dt by < 0.5%
  Particle p = silicon_particle();
  for (double t : {400.0, 900.0, 1500.0}) {
    auto emi1 = integrated_rate_and_power(RateKind::emission, p, t, 2000);
    auto emi2 = integrated_rate_and_power(RateKind::emission, p, t, 4000);
    CHECK(emi1.power == doctest::Approx(emi2.power).epsilon(5e-3));
  }
}

TEST_CASE("temperature profile wrappers") {
  auto c = TemperatureProfile::constant(345.0);
  CHECK(c.is_constant());
  CHECK(c(0.0) == 345.0);
  CHECK(c(10.0) == 345.0);

  ThermalTimeline tl;
  tl.samples = {{0.0, 300.0}, {1.0, 400.0}, {2.0, 350.0}};
  auto prof = TemperatureProfile::from_timeline(tl);
  CHECK_FALSE(prof.is_constant());
  CHECK(prof(0.0) == 300.0);
  CHECK(prof(0.5) == doctest::Approx(350.0));
  CHECK(prof(1.5) == doctest::Approx(375.0));
  CHECK(prof(5.0) == 350.0);  // clamped

  CHECK_THROWS_AS(evolve_temperature(silicon_particle(), {{-1.0, 0.0, 1e-6}}, 300.0, 300.0),
                  data_error);
}
