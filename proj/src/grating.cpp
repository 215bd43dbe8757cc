// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/grating.hpp"

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/special_functions.hpp"

namespace talbot {

namespace {

using constants::hbar;
using constants::light_speed;
using constants::pi;
using constants::vacuum_permittivity;

double zeta_coherent(double xi, double phi0, GratingMode mode) {
  return mode == GratingMode::classical ? phi0 * pi * xi : phi0 * std::sin(pi * xi);
}

double zeta_absorption(double xi, double phi0, double beta) {
  return beta * phi0 * (1.0 - std::cos(pi * xi));
}

// Sum over the absorption kernel e^{-z} I_j(z) convolved with the coherent
// Bessel coefficients; exact at the Graf branch point.
double absorption_convolution(int n, double zc, double za) {
  int width = 24 + static_cast<int>(std::ceil(3.0 * za));
  double sum = 0.0;
  for (int j = -width; j <= width; ++j) {
    double kernel = std::exp(-za) * bessel_i(j, za);
    if (kernel < 1e-18 && j != 0) continue;
    sum += kernel * bessel_j(n - j, zc);
  }
  return sum;
}

}  // namespace

double phase_amplitude(const Particle& particle, double pulse_energy, double spot_area,
                       double wavelength) {
  if (pulse_energy < 0.0) throw data_error("pulse energy must be non-negative");
  if (!(spot_area > 0.0)) throw data_error("spot area must be positive");
  auto resp = optical_response(particle, wavelength);
  if (!(resp.alpha.real() > 0.0)) {
    throw data_error("material has non-positive Re(alpha) at the grating wavelength; "
                     "phase grating model requires an attractive optical potential");
  }
  return 2.0 * resp.alpha.real() * pulse_energy /
         (hbar * light_speed * vacuum_permittivity * spot_area);
}

GratingPulse make_grating_pulse(const Particle& particle, double wavelength, double pulse_energy,
                                double spot_area) {
  auto resp = optical_response(particle, wavelength);
  double phi0 = phase_amplitude(particle, pulse_energy, spot_area, wavelength);
  return GratingPulse{wavelength, wavelength / 2.0, pulse_energy, spot_area,
                      phi0, 2.0 * resp.beta * phi0, 2.0 * resp.eta * phi0};
}

double coeff_coherent(int n, double xi, double phi0) {
  return bessel_j(n, phi0 * std::sin(pi * xi));
}

double coeff_classical(int n, double xi, double phi0) {
  return bessel_j(n, phi0 * pi * xi);
}

double coeff_with_absorption(int n, double xi, double phi0, double beta, GratingMode mode,
                             bool* used_fallback) {
  if (beta < 0.0) throw data_error("absorption parameter beta must be non-negative");
  if (used_fallback) *used_fallback = false;
  double zc = zeta_coherent(xi, phi0, mode);
  double za = zeta_absorption(xi, phi0, beta);
  if (za == 0.0) return bessel_j(n, zc);

  double gap = std::abs(std::abs(zc) - za);
  if (gap <= 1e-9 * std::max(1.0, za)) {
    if (used_fallback) *used_fallback = true;
    return absorption_convolution(n, zc, za);
  }

  std::complex<double> ratio(0.0, 0.0);
  std::complex<double> jn(0.0, 0.0);
  double disc = zc * zc - za * za;
  std::complex<double> rbase((zc + za) / (zc - za), 0.0);
  ratio = std::pow(rbase, 0.5 * n);
  if (disc >= 0.0) {
    double arg = (zc - za >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc);
    jn = bessel_j(n, arg);
  } else {
    // sqrt of the negative discriminant is i*y; J_n(+-iy) = (+-i)^n I_n(y).
    double y = std::sqrt(-disc);
    double sgn = zc - za >= 0.0 ? 1.0 : -1.0;
    std::complex<double> unit(0.0, sgn);
    jn = std::pow(unit, n) * bessel_i(n, y);
  }
  std::complex<double> value = std::exp(-za) * ratio * jn;
  if (std::abs(value.imag()) > 1e-10) {
    throw numeric_error("absorption-modified Talbot coefficient has a non-real value");
  }
  return value.real();
}

double scattering_kernel(int n, double xi, double n_scattered) {
  if (n_scattered < 0.0) throw data_error("scattered photon number must be non-negative");
  if (n_scattered == 0.0) return n == 0 ? 1.0 : 0.0;
  double z = pi * xi;
  double x = scattering_angular_factor(z);
  double c = std::cos(z);
  double expo = -(0.5 * n_scattered) * (1.0 - 3.0 * c * x);
  double arg = (0.5 * n_scattered) * (3.0 * x - c);
  return std::exp(expo) * bessel_i(n, arg);
}

TalbotCoefficientSet talbot_coefficients(double xi, double phi0, double beta, GratingMode mode,
                                         int cutoff) {
  constexpr int kMaxCutoff = 160;
  int n_lo = cutoff > 0 ? cutoff : std::max(8, static_cast<int>(std::ceil(phi0 * (1.0 + 2.0 * beta))) + 8);
  int chosen = -1;
  if (cutoff > 0) {
    chosen = cutoff;
  } else {
    for (int nc = n_lo; nc <= kMaxCutoff; ++nc) {
      double tail = std::abs(coeff_with_absorption(nc, xi, phi0, beta, mode)) +
                    std::abs(coeff_with_absorption(nc + 1, xi, phi0, beta, mode));
      if (tail < 1e-12) {
        chosen = nc;
        break;
      }
    }
    if (chosen < 0) throw numeric_error("Talbot coefficient cutoff exceeded");
  }
  TalbotCoefficientSet set;
  set.xi = xi;
  set.cutoff = chosen;
  set.coeffs.resize(2 * static_cast<std::size_t>(chosen) + 1);
  for (int n = -chosen; n <= chosen; ++n) {
    set.coeffs[static_cast<std::size_t>(n + chosen)] = coeff_with_absorption(n, xi, phi0, beta, mode);
  }
  return set;
}

TalbotCoefficientSet combine_scattering(const TalbotCoefficientSet& set, double xi,
                                        double n_scattered) {
  if (n_scattered == 0.0) return set;
  int width = 4;
  while (width < 64 && std::abs(scattering_kernel(width, xi, n_scattered)) > 1e-18) ++width;
  TalbotCoefficientSet out;
  out.xi = xi;
  out.cutoff = set.cutoff;
  out.coeffs.assign(set.coeffs.size(), 0.0);
  for (int n = -set.cutoff; n <= set.cutoff; ++n) {
    std::complex<double> acc = 0.0;
    for (int j = -width; j <= width; ++j) {
      acc += set.at(n - j) * scattering_kernel(j, xi, n_scattered);
    }
    out.coeffs[static_cast<std::size_t>(n + out.cutoff)] = acc;
  }
  return out;
}

}  // namespace talbot
