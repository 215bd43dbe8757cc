// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace talbot {

// sin(x)/x with the removable singularity filled in.
double sinc(double x);

// Spherical Bessel function j1(x) = sin(x)/x^2 - cos(x)/x.
double sph_bessel_j1(double x);

// (sin z - j1(z)) / (2z), the angular factor of the standing-wave Rayleigh
// scattering kernel; -> 1/3 as z -> 0.
double scattering_angular_factor(double z);

// Bessel function of the first kind, integer order, any sign of n and x.
// Downward (Miller) recurrence normalized with the even-order sum rule;
// relative accuracy ~1e-13 for |x| <= 60 away from zeros.
double bessel_j(int n, double x);

// J_0(x) .. J_nmax(x) in one downward pass.
std::vector<double> bessel_j_sequence(int nmax, double x);

// Modified Bessel function of the first kind, integer order, by power series.
double bessel_i(int n, double x);

// Sine integral Si(x) = int_0^x sin(u)/u du.  Power series for |x| < 4,
// Lentz continued fraction of E1(ix) beyond; relative accuracy ~1e-13 on
// [0, 1e4].
double sine_integral(double x);

// Si(x)/x with the x -> 0 limit (1) filled in; always in (0, 1].
double si_over_x(double x);

// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int n, double a, double b);

// Nodes and weights of the n-point Gauss-Hermite rule (weight e^{-t^2}).
Quadrature gauss_hermite(int n);

}  // namespace talbot
