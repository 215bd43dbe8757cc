// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "talbot/materials.hpp"

namespace talbot {

enum class GratingMode { quantum, classical };

// A single retro-reflected standing-wave pulse acting as a phase grating.
struct GratingPulse {
  double wavelength;    // m
  double period;        // d = wavelength / 2
  double pulse_energy;  // J
  double spot_area;     // m^2
  double phi0;          // rad, eikonal phase at the antinode
  double n0;            // mean absorbed photons at the antinode, 2*beta*phi0
  double n_scattered;   // mean Rayleigh-scattered photons, 2*eta*phi0
};

// phi0 = 2 Re(alpha) E_G / (hbar c eps0 a_G), with alpha at the grating
// wavelength.  Materials with Re(alpha) <= 0 are rejected (repulsive optical
// potential, outside this grating model).
double phase_amplitude(const Particle& particle, double pulse_energy, double spot_area,
                       double wavelength);

GratingPulse make_grating_pulse(const Particle& particle, double wavelength, double pulse_energy,
                                double spot_area);

// Coherent Talbot coefficient B_n(xi) = J_n(phi0 sin(pi xi)).
double coeff_coherent(int n, double xi, double phi0);

// Classical counterpart C_n(xi) = J_n(phi0 pi xi).
double coeff_classical(int n, double xi, double phi0);

// Talbot coefficient with photon absorption folded in (Graf closed form),
// evaluated in complex arithmetic with analytic continuation across
// zeta_coh^2 < zeta_abs^2.  The imaginary part must vanish to 1e-10 and the
// real part is returned.  At the branch point |zeta_coh| = zeta_abs the closed
// form is replaced by the convolution of the coherent and absorption kernels;
// `used_fallback`, when given, reports that.
double coeff_with_absorption(int n, double xi, double phi0, double beta, GratingMode mode,
                             bool* used_fallback = nullptr);

// Fourier kernel R_n of the standing-wave Rayleigh-scattering transformation.
double scattering_kernel(int n, double xi, double n_scattered);

// Talbot coefficients at one fixed xi, indexed n in [-cutoff, cutoff].
struct TalbotCoefficientSet {
  double xi;
  int cutoff;
  std::vector<std::complex<double>> coeffs;  // index n + cutoff

  std::complex<double> at(int n) const {
    if (n < -cutoff || n > cutoff) return 0.0;
    return coeffs[static_cast<std::size_t>(n + cutoff)];
  }
};

// Builds the coefficient set with an adaptive cutoff: the smallest N with
// |B_N| + |B_{N+1}| < 1e-12 (cutoff < 0 requests adaptive choice).
TalbotCoefficientSet talbot_coefficients(double xi, double phi0, double beta, GratingMode mode,
                                         int cutoff = -1);

// Discrete convolution with the scattering kernel at the same xi.
TalbotCoefficientSet combine_scattering(const TalbotCoefficientSet& set, double xi,
                                        double n_scattered);

}  // namespace talbot
