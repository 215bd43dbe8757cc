// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/decoherence.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/special_functions.hpp"

namespace talbot {

namespace {

using constants::boltzmann;
using constants::hbar;
using constants::light_speed;
using constants::pi;
using constants::planck;

// 4 pi Gamma(9/10) / (5 sin(pi/5))
const double kVdwPrefactor = 4.0 * pi * std::tgamma(0.9) / (5.0 * std::sin(pi / 5.0));

// Spectral tables along the material's tabulated range (ascending omega).
struct SpectralTable {
  std::vector<double> omega;
  std::vector<double> weight;  // trapezoid weights
  std::vector<double> im_u;    // Im (eps-1)/(eps+2)
  std::vector<double> abs_u2;  // |(eps-1)/(eps+2)|^2

  SpectralTable(const Material& mat, int grid) {
    double loglmin = std::log(mat.min_wavelength());
    double dlog = (std::log(mat.max_wavelength()) - loglmin) / (grid - 1);
    omega.resize(static_cast<std::size_t>(grid));
    weight.assign(static_cast<std::size_t>(grid), 0.0);
    im_u.resize(static_cast<std::size_t>(grid));
    abs_u2.resize(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
      double lam = std::exp(loglmin + dlog * (grid - 1 - i));
      auto idx = static_cast<std::size_t>(i);
      omega[idx] = 2.0 * pi * light_speed / lam;
      auto [n, clamped] = refractive_index(mat, lam);
      (void)clamped;
      std::complex<double> u = (n * n - 1.0) / (n * n + 2.0);
      im_u[idx] = std::max(u.imag(), 0.0);
      abs_u2[idx] = std::norm(u);
    }
    for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
      double dw = 0.5 * (omega[i + 1] - omega[i]);
      weight[i] += dw;
      weight[i + 1] += dw;
    }
  }
};

const SpectralTable& table_for(const Material& mat) {
  static std::map<const Material*, std::unique_ptr<SpectralTable>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(&mat);
  if (it == cache.end()) {
    it = cache.emplace(&mat, std::make_unique<SpectralTable>(mat, 4000)).first;
  }
  return *it->second;
}

// ln R_n of a spectral channel with kernel [f(a) - 1] integrated over the
// gamma-weighted spectrum; a = omega * x_n / c.
template <typename Gamma, typename Kernel>
double ln_spectral_reduction(const SpectralTable& tab, const Timeline& tl, double x_n,
                             Gamma&& gamma, Kernel&& kernel) {
  double acc = 0.0;
  for (std::size_t i = 0; i < tab.omega.size(); ++i) {
    double g = gamma(i);
    if (g == 0.0) continue;
    double a = tab.omega[i] * x_n / light_speed;
    acc += g * (kernel(a) - 1.0) * tab.weight[i];
  }
  return acc * tl.total();
}

}  // namespace

double c6_coefficient(const Particle& particle, const Environment& env) {
  double alpha0 = static_polarizability(*particle.material, particle.radius);
  double ii = particle.material->ionization_energy();
  double ig = env.gas_ionization;
  return 3.0 * alpha0 * env.gas_polarizability * ig * ii /
         (32.0 * pi * pi * constants::vacuum_permittivity * constants::vacuum_permittivity *
          (ii + ig));
}

double collision_rate(const Particle& particle, const Environment& env) {
  if (!(env.temperature > 0.0) || !(env.gas_pressure >= 0.0) || !(env.gas_mass > 0.0)) {
    throw data_error("invalid gas environment");
  }
  double c6 = c6_coefficient(particle, env);
  double vg = std::sqrt(2.0 * boltzmann * env.temperature / env.gas_mass);
  return kVdwPrefactor * std::pow(3.0 * pi * c6 / (2.0 * hbar), 0.4) * env.gas_pressure *
         std::pow(vg, 0.6) / (boltzmann * env.temperature);
}

double order_separation(const Timeline& timeline, int n) {
  return std::abs(n) * planck * timeline.t2 / (timeline.mass * timeline.magnified_period());
}

double reduction_collision(const Particle& particle, const Environment& env,
                           const Timeline& timeline, int n) {
  if (n == 0) return 1.0;
  return std::exp(-collision_rate(particle, env) * timeline.total());
}

double reduction_absorption(const Particle& particle, const Environment& env,
                            const Timeline& timeline, int n) {
  if (n == 0) return 1.0;
  const auto& tab = table_for(*particle.material);
  double x_n = order_separation(timeline, n);
  double r = particle.radius;
  double ln_r = ln_spectral_reduction(
      tab, timeline, x_n,
      [&](std::size_t i) {
        double x = hbar * tab.omega[i] / (boltzmann * env.temperature);
        if (x > 700.0) return 0.0;
        double wr = tab.omega[i] * r / light_speed;
        return 4.0 / pi * wr * wr * wr * tab.im_u[i] / std::expm1(x);
      },
      [](double a) { return si_over_x(a); });
  return std::exp(ln_r);
}

double reduction_scattering(const Particle& particle, const Environment& env,
                            const Timeline& timeline, int n) {
  if (n == 0) return 1.0;
  const auto& tab = table_for(*particle.material);
  double x_n = order_separation(timeline, n);
  double r = particle.radius;
  double ln_r = ln_spectral_reduction(
      tab, timeline, x_n,
      [&](std::size_t i) {
        double x = hbar * tab.omega[i] / (boltzmann * env.temperature);
        if (x > 700.0) return 0.0;
        double wr = tab.omega[i] * r / light_speed;
        return 8.0 / (3.0 * pi) * std::pow(wr, 6) * tab.abs_u2[i] / std::expm1(x);
      },
      [](double a) {
        if (std::abs(a) < 1e-4) return 1.0 - a * a / 9.0;
        double s = sinc(a);
        return sine_integral(2.0 * a) / a - s * s;
      });
  return std::exp(ln_r);
}

double reduction_emission_const(const Particle& particle, const Timeline& timeline, double t_int,
                                int n) {
  if (n == 0) return 1.0;
  if (!(t_int > 0.0)) return 1.0;
  const auto& tab = table_for(*particle.material);
  double x_n = order_separation(timeline, n);
  double r = particle.radius;
  double ln_r = ln_spectral_reduction(
      tab, timeline, x_n,
      [&](std::size_t i) {
        double x = hbar * tab.omega[i] / (boltzmann * t_int);
        if (x > 700.0) return 0.0;
        double wr = tab.omega[i] * r / light_speed;
        return 4.0 / pi * wr * wr * wr * tab.im_u[i] * std::exp(-x);
      },
      [](double a) { return si_over_x(a); });
  return std::exp(ln_r);
}

double reduction_emission(const Particle& particle, const Timeline& timeline,
                          const TemperatureProfile& t_int, int n) {
  if (n == 0) return 1.0;
  if (t_int.is_constant()) {
    return reduction_emission_const(particle, timeline, t_int.constant_value(), n);
  }
  const auto& tab = table_for(*particle.material);
  static const Quadrature theta_rule = gauss_legendre(64, 0.0, 1.0);
  double x_n = order_separation(timeline, n);
  double r = particle.radius;
  double t1 = timeline.t1, t2 = timeline.t2;
  double acc = 0.0;
  for (std::size_t q = 0; q < theta_rule.nodes.size(); ++q) {
    double theta = theta_rule.nodes[q];
    double wq = theta_rule.weights[q];
    double temp_before = t_int(t1 - t1 * theta);
    double temp_after = t_int(t1 + t2 * theta);
    for (std::size_t i = 0; i < tab.omega.size(); ++i) {
      if (tab.im_u[i] == 0.0) continue;
      double wr = tab.omega[i] * r / light_speed;
      double base = 4.0 / pi * wr * wr * wr * tab.im_u[i];
      double xb = hbar * tab.omega[i] / boltzmann;
      double g1 = xb / temp_before < 700.0 ? t1 * base * std::exp(-xb / temp_before) : 0.0;
      double g2 = xb / temp_after < 700.0 ? t2 * base * std::exp(-xb / temp_after) : 0.0;
      if (g1 == 0.0 && g2 == 0.0) continue;
      double a = tab.omega[i] * x_n / light_speed;
      acc += wq * (g1 + g2) * (sinc(a * theta) - 1.0) * tab.weight[i];
    }
  }
  return std::exp(acc);
}

double reduction_csl(const Particle& particle, const Timeline& timeline, const CslParams& csl,
                     int n) {
  if (n == 0 || csl.rate == 0.0) return 1.0;
  double mass_ratio = particle.mass / constants::atomic_mass_unit;
  double gamma = mass_ratio * mass_ratio * csl.rate;
  double x_n = order_separation(timeline, n);
  double u = x_n / (2.0 * csl.localization_length);
  double f = 0.0;
  if (u < 1e-6) {
    f = 1.0 - u * u / 3.0;  // sqrt(pi) erf(u) / (2u) expansion
  } else {
    f = std::sqrt(pi) * std::erf(u) / (2.0 * u);
  }
  return std::exp(-gamma * (1.0 - f) * timeline.total());
}

double ReductionBreakdown::combined() const { return std::exp(ln_total()); }

ReductionBreakdown total_reduction(const Particle& particle, const Environment& env,
                                   const Timeline& timeline, const TemperatureProfile& t_int,
                                   const CslParams& csl, const ChannelToggles& channels, int n) {
  ReductionBreakdown b;
  if (n == 0) return b;
  if (channels.collision) b.ln_collision = std::log(reduction_collision(particle, env, timeline, n));
  if (channels.absorption) b.ln_absorption = std::log(reduction_absorption(particle, env, timeline, n));
  if (channels.scattering) b.ln_scattering = std::log(reduction_scattering(particle, env, timeline, n));
  if (channels.emission) b.ln_emission = std::log(reduction_emission(particle, timeline, t_int, n));
  if (channels.csl) b.ln_csl = std::log(reduction_csl(particle, timeline, csl, n));
  return b;
}

ReductionFn make_reduction_function(const Particle& particle, const Environment& env,
                                    const Timeline& timeline, const TemperatureProfile& t_int,
                                    const CslParams& csl, const ChannelToggles& channels) {
  struct Cache {
    std::mutex mtx;
    std::map<int, double> values;
  };
  auto cache = std::make_shared<Cache>();
  return [=](int n) {
    int key = std::abs(n);  // R_n = R_{-n}
    {
      std::lock_guard<std::mutex> lock(cache->mtx);
      auto it = cache->values.find(key);
      if (it != cache->values.end()) return it->second;
    }
    double r = total_reduction(particle, env, timeline, t_int, csl, channels, key).combined();
    std::lock_guard<std::mutex> lock(cache->mtx);
    cache->values[key] = r;
    return r;
  };
}

double csl_bound(double visibility_ratio, const Particle& particle, const Timeline& timeline,
                 double localization_length) {
  if (!(visibility_ratio > 0.0 && visibility_ratio < 1.0)) {
    throw data_error("visibility ratio must lie strictly between 0 and 1");
  }
  // R_1(lambda) = ratio; R_1 = exp(-(m/amu)^2 lambda (1-f) t) is monotone.
  double x1 = order_separation(timeline, 1);
  double u = x1 / (2.0 * localization_length);
  double f = u < 1e-6 ? 1.0 - u * u / 3.0 : std::sqrt(pi) * std::erf(u) / (2.0 * u);
  double mass_ratio = particle.mass / constants::atomic_mass_unit;
  double target = -std::log(visibility_ratio);
  double denom = mass_ratio * mass_ratio * (1.0 - f) * timeline.total();
  double exact = target / denom;
  // Bisection as the contract requires; the closed form brackets it tightly.
  double lo = exact * 0.5, hi = exact * 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    CslParams p{localization_length, mid};
    if (reduction_csl(particle, timeline, p, 1) > visibility_ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-3 * lo) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace talbot
