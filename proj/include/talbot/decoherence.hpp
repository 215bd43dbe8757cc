// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "talbot/constants.hpp"
#include "talbot/dynamics.hpp"
#include "talbot/materials.hpp"
#include "talbot/thermal.hpp"

namespace talbot {

// Residual gas environment; defaults describe nitrogen at room temperature.
struct Environment {
  double temperature = 300.0;  // K
  double gas_pressure = 1e-8;  // Pa (1e-10 mbar)
  double gas_mass = 28.0 * constants::atomic_mass_unit;
  double gas_polarizability =
      1.74e-30 * 4.0 * constants::pi * constants::vacuum_permittivity;  // C m^2/V
  double gas_ionization = 15.6 * constants::elementary_charge;          // J
};

// Continuous-spontaneous-localization parameters.
struct CslParams {
  double localization_length = 100e-9;  // r_c, m
  double rate = 0.0;                    // lambda_CSL, Hz
};

// London-formula van der Waals coefficient C6 [J m^6].
double c6_coefficient(const Particle& particle, const Environment& env);

// Total gas scattering rate of the van der Waals model [1/s].
double collision_rate(const Particle& particle, const Environment& env);

// Interference path separation probed by order n: x_n = n h t2 / (m D).
double order_separation(const Timeline& timeline, int n);

// Per-order reduction factors R_n, all in (0, 1] with R_0 = 1.
double reduction_collision(const Particle& particle, const Environment& env,
                           const Timeline& timeline, int n);
double reduction_absorption(const Particle& particle, const Environment& env,
                            const Timeline& timeline, int n);
double reduction_scattering(const Particle& particle, const Environment& env,
                            const Timeline& timeline, int n);
// Emission with a constant internal temperature (static spectral average).
double reduction_emission_const(const Particle& particle, const Timeline& timeline,
                                double t_int, int n);
// Emission with a time-dependent internal temperature T_int(t) on [0, t1+t2];
// the release happens at profile time 0 and the grating fires at t1.
double reduction_emission(const Particle& particle, const Timeline& timeline,
                          const TemperatureProfile& t_int, int n);
double reduction_csl(const Particle& particle, const Timeline& timeline, const CslParams& csl,
                     int n);

struct ChannelToggles {
  bool collision = true;
  bool absorption = true;
  bool scattering = true;
  bool emission = true;
  bool csl = false;
};

struct ReductionBreakdown {
  double ln_collision = 0.0;
  double ln_absorption = 0.0;
  double ln_scattering = 0.0;
  double ln_emission = 0.0;
  double ln_csl = 0.0;

  double ln_total() const {
    return ln_collision + ln_absorption + ln_scattering + ln_emission + ln_csl;
  }
  double combined() const;
};

ReductionBreakdown total_reduction(const Particle& particle, const Environment& env,
                                   const Timeline& timeline, const TemperatureProfile& t_int,
                                   const CslParams& csl, const ChannelToggles& channels, int n);

// Reduction factor provider for fringe_pattern; caches per order.
ReductionFn make_reduction_function(const Particle& particle, const Environment& env,
                                    const Timeline& timeline, const TemperatureProfile& t_int,
                                    const CslParams& csl, const ChannelToggles& channels);

// Upper bound on lambda_CSL implied by observing a fraction `visibility_ratio`
// of the decoherence-free visibility; monotone bisection to 1e-3 relative.
double csl_bound(double visibility_ratio, const Particle& particle, const Timeline& timeline,
                 double localization_length = 100e-9);

}  // namespace talbot
