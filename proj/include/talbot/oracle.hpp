// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "talbot/dynamics.hpp"

namespace talbot::oracle {

// Brute-force verifiers, algorithmically independent of the closed-form
// modules they check: spectral wavefunction propagation, ballistic Monte
// Carlo, and direct kernel convolution with quadrature-based Bessel values.

struct WaveGridSpec {
  int log2_points = 19;        // 2^k grid points
  double span = 128e-6;        // m
  double packet_width = 0.8e-9;  // coherent packet sigma_0, m
  int position_samples = 64;   // Gauss-Hermite nodes over the source size
  int momentum_samples = 1;    // Gauss-Hermite nodes over the thermal momentum
};

struct WaveResult {
  std::vector<double> x;        // m
  std::vector<double> density;  // arbitrary normalization of the mixture
  double leakage;               // spectral mass in the top k band
  double norm_drift;            // worst |1 - norm| over propagated packets
};

// Thermal Gaussian mixture of minimum-uncertainty packets: free flight t1
// (analytic), eikonal phase mask, spectral propagation t2 (FFT), densities
// averaged with Gauss-Hermite weights over source position and momentum.
WaveResult propagate_point_source(double sigma_x, double sigma_p, double mass, double t1,
                                  const std::function<double(double)>& phase, double t2,
                                  const WaveGridSpec& spec);

struct MonteCarloResult {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t samples;
  std::complex<double> harmonic;  // mean of exp(2 pi i x / D)
  double visibility;              // 2 |harmonic|
  double visibility_sigma;        // ~ sqrt(2/N)
};

// Ballistic trajectories: sample (x0, p0), drift t1, kick by the gradient of
// the eikonal phase, drift t2; deterministic for a fixed seed.
MonteCarloResult classical_monte_carlo(std::uint64_t samples, const SourceState& source,
                                       const Timeline& timeline, double phi0,
                                       std::uint64_t seed, int bins = 256, int threads = 1);

// Talbot coefficient by direct convolution of the coherent, absorption and
// scattering kernels; Bessel factors from quadrature of their integral
// representations.
std::complex<double> coeff_convolution(int n, double xi, double phi0, double beta,
                                       double n_scattered,
                                       GratingMode mode = GratingMode::quantum);

}  // namespace talbot::oracle
