// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/thermal.hpp"

#include <algorithm>
#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

namespace {

using constants::boltzmann;
using constants::hbar;
using constants::light_speed;
using constants::pi;

// Precomputed spectral tables for fast repeated RHS evaluation.
struct RateContext {
  std::vector<double> omega;      // ascending, trapezoid weights folded in
  std::vector<double> weight;     // trapezoid weight d(omega)
  std::vector<double> emi_base;   // (4/pi)(wR/c)^3 Im u * hbar w  (x Boltzmann factor later)
  std::vector<double> xfactor;    // hbar w / kB
  double laser_power;             // W absorbed from the trap beam
  double absorbed_bb_power;       // W absorbed from the blackbody field
  double mc;                      // m c_m

  explicit RateContext(const Particle& p, double intensity, double wavelength, double t_env,
                       int grid = 4000) {
    const Material& mat = *p.material;
    double loglmin = std::log(mat.min_wavelength());
    double dlog = (std::log(mat.max_wavelength()) - loglmin) / (grid - 1);
    omega.resize(static_cast<std::size_t>(grid));
    weight.assign(static_cast<std::size_t>(grid), 0.0);
    emi_base.resize(static_cast<std::size_t>(grid));
    xfactor.resize(static_cast<std::size_t>(grid));
    // ascending omega = descending wavelength
    for (int i = 0; i < grid; ++i) {
      double lam = std::exp(loglmin + dlog * (grid - 1 - i));
      omega[static_cast<std::size_t>(i)] = 2.0 * pi * light_speed / lam;
    }
    for (int i = 0; i + 1 < grid; ++i) {
      double dw = 0.5 * (omega[static_cast<std::size_t>(i + 1)] - omega[static_cast<std::size_t>(i)]);
      weight[static_cast<std::size_t>(i)] += dw;
      weight[static_cast<std::size_t>(i + 1)] += dw;
    }
    absorbed_bb_power = 0.0;
    for (int i = 0; i < grid; ++i) {
      auto idx = static_cast<std::size_t>(i);
      double w = omega[idx];
      auto [n, clamped] = refractive_index(mat, 2.0 * pi * light_speed / w);
      (void)clamped;
      std::complex<double> eps = n * n;
      double imu = ((eps - 1.0) / (eps + 2.0)).imag();
      double wr = w * p.radius / light_speed;
      double base = 4.0 / pi * wr * wr * wr * std::max(imu, 0.0);
      emi_base[idx] = base * hbar * w * weight[idx];
      xfactor[idx] = hbar * w / boltzmann;
      double xe = xfactor[idx] / t_env;
      if (xe < 700.0) absorbed_bb_power += base * hbar * w / std::expm1(xe) * weight[idx];
    }
    if (intensity > 0.0) {
      auto resp = optical_response(p, wavelength);
      laser_power = intensity * resp.sigma_abs;
    } else {
      laser_power = 0.0;
    }
    mc = p.mass * mat.specific_heat();
  }

  double emitted_power(double t_int) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
      double x = xfactor[i] / t_int;
      if (x < 700.0) sum += emi_base[i] * std::exp(-x);
    }
    return sum;
  }

  double rhs(double t_int) const {
    return (laser_power + absorbed_bb_power - emitted_power(t_int)) / mc;
  }
};

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

}  // namespace

double heating_rhs(const Particle& particle, double intensity, double wavelength, double t_env,
                   double t_int) {
  if (!(t_int > 0.0)) throw data_error("heating_rhs: internal temperature must be positive");
  RateContext ctx(particle, intensity, wavelength, t_env);
  return ctx.rhs(t_int);
}

ThermalTimeline evolve_temperature(const Particle& particle, std::vector<ThermalPhase> phases,
                                   double initial_temperature, double environment_temperature,
                                   double rel_tol, double abs_tol) {
  for (const auto& ph : phases) {
    if (!(ph.duration > 0.0)) throw data_error("thermal phase duration must be positive");
  }
  ThermalTimeline tl;
  tl.phases = phases;
  tl.initial_temperature = initial_temperature;
  tl.environment_temperature = environment_temperature;

  double t_global = 0.0;
  double temperature = initial_temperature;
  tl.samples.push_back({0.0, temperature});

  for (const auto& ph : phases) {
    RateContext ctx(particle, ph.intensity, ph.wavelength, environment_temperature);
    double t = 0.0;
    double h = ph.duration / 400.0;
    const double h_max = ph.duration / 200.0;  // >= 200 samples per phase
    double k1 = ctx.rhs(temperature);
    while (t < ph.duration) {
      h = std::min({h, h_max, ph.duration - t});
      double k2 = ctx.rhs(temperature + h * kA21 * k1);
      double k3 = ctx.rhs(temperature + h * (kA31 * k1 + kA32 * k2));
      double k4 = ctx.rhs(temperature + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      double k5 = ctx.rhs(temperature + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
      double k6 = ctx.rhs(temperature + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
      double t_new = temperature + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      double k7 = ctx.rhs(t_new);
      double err_est = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
      double scale = abs_tol + rel_tol * std::max(std::abs(temperature), std::abs(t_new));
      double err = std::abs(err_est) / scale;
      if (err <= 1.0) {
        t += h;
        temperature = t_new;
        k1 = k7;  // FSAL
        tl.samples.push_back({t_global + t, temperature});
        if (!(temperature > 0.0)) throw numeric_error("internal temperature left the physical domain");
      }
      double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      factor = std::clamp(factor, 0.2, 5.0);
      h *= factor;
      if (h < ph.duration * 1e-14) {
        throw numeric_error("thermal integrator step-size underflow at t = " +
                            std::to_string(t_global + t) + " s, T_int = " +
                            std::to_string(temperature) + " K");
      }
    }
    t_global += ph.duration;
  }
  return tl;
}

double equilibrium_temperature(const Particle& particle, double intensity, double wavelength,
                               double t_env) {
  RateContext ctx(particle, intensity, wavelength, t_env);
  double lo = t_env, hi = 5000.0;
  if (ctx.rhs(lo) < 0.0) return lo;
  if (ctx.rhs(hi) > 0.0) throw numeric_error("no thermal equilibrium below 5000 K");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (ctx.rhs(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-6 * hi) break;
  }
  return 0.5 * (lo + hi);
}

TemperatureProfile TemperatureProfile::constant(double temperature) {
  TemperatureProfile p;
  p.constant_ = temperature;
  return p;
}

TemperatureProfile TemperatureProfile::from_timeline(const ThermalTimeline& timeline,
                                                     double time_offset) {
  if (timeline.samples.empty()) throw data_error("temperature profile from empty timeline");
  TemperatureProfile p;
  p.samples_ = timeline.samples;
  p.offset_ = time_offset;
  return p;
}

double TemperatureProfile::operator()(double time) const {
  if (samples_.empty()) return constant_;
  double t = time + offset_;
  if (t <= samples_.front().time) return samples_.front().temperature;
  if (t >= samples_.back().time) return samples_.back().temperature;
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const ThermalSample& s, double v) { return s.time < v; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  double f = (t - lo.time) / (hi.time - lo.time);
  return lo.temperature + f * (hi.temperature - lo.temperature);
}

}  // namespace talbot
