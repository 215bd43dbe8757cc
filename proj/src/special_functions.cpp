// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/special_functions.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double sph_bessel_j1(double x) {
  double ax = std::abs(x);
  if (ax < 0.5) {
    double x2 = x * x;
    // x/3 - x^3/30 + x^5/840 - x^7/45360
    return x * (1.0 / 3.0 + x2 * (-1.0 / 30.0 + x2 * (1.0 / 840.0 - x2 / 45360.0)));
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

double scattering_angular_factor(double z) {
  if (std::abs(z) < 0.05) {
    double z2 = z * z;
    return 1.0 / 3.0 + z2 * (-1.0 / 15.0 + z2 * (1.0 / 280.0 - z2 / 11340.0));
  }
  return (std::sin(z) - sph_bessel_j1(z)) / (2.0 * z);
}

std::vector<double> bessel_j_sequence(int nmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  double ax = std::abs(x);
  if (ax < 1e-300) {
    out[0] = 1.0;
    return out;
  }
  int top = std::max(nmax, static_cast<int>(std::ceil(ax)));
  int start = top + 24 + static_cast<int>(2.0 * std::sqrt(static_cast<double>(top)));
  if (start % 2 != 0) ++start;

  double jp = 0.0;           // J_{k+1}
  double jc = 1e-300;        // J_k (arbitrary scale)
  double sum = 0.0;          // J_0 + 2 sum_{k even>0} J_k, at current scale
  for (int k = start; k >= 1; --k) {
    double jm = (2.0 * k / ax) * jc - jp;
    jp = jc;
    jc = jm;
    if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = jc;
    if ((k - 1) % 2 == 0 && k - 1 > 0) sum += 2.0 * jc;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      sum *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
  }
  sum += jc;  // J_0 contribution
  for (auto& v : out) v /= sum;
  if (x < 0.0) {
    for (int k = 1; k <= nmax; k += 2) out[static_cast<std::size_t>(k)] = -out[static_cast<std::size_t>(k)];
  }
  return out;
}

double bessel_j(int n, double x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 1e-300) return n == 0 ? sign : 0.0;
  auto seq = bessel_j_sequence(n, x);
  return sign * seq[static_cast<std::size_t>(n)];
}

double bessel_i(int n, double x) {
  n = std::abs(n);
  double sign = 1.0;
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -1.0;
  }
  if (x < 1e-300) return n == 0 ? sign : 0.0;
  double lt0 = n * std::log(0.5 * x) - std::lgamma(n + 1.0);
  if (lt0 < -745.0) return 0.0;
  double term = std::exp(lt0);
  double sum = term;
  double q = 0.25 * x * x;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (term < sum * kEps) break;
  }
  return sign * sum;
}

double sine_integral(double x) {
  double sign = x < 0.0 ? -1.0 : 1.0;
  double ax = std::abs(x);
  if (ax < 4.0) {
    double term = ax;
    double sum = ax;
    double x2 = ax * ax;
    for (int k = 1; k < 60; ++k) {
      term *= -x2 * (2.0 * k - 1.0) / (2.0 * k * (2.0 * k + 1.0) * (2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sign * sum;
  }
  // Si(x) = pi/2 + Im E1(ix); E1 by modified Lentz continued fraction.
  using cplx = std::complex<double>;
  const cplx z(0.0, ax);
  const double fpmin = 1e-300;
  cplx b = z + 1.0;
  cplx c(1.0 / fpmin, 0.0);
  cplx d = 1.0 / b;
  cplx hh = d;
  for (int i = 1; i < 20000; ++i) {
    double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (std::abs(c) < fpmin) c = cplx(fpmin, 0.0);
    cplx del = c * d;
    hh *= del;
    if (std::abs(del - 1.0) < 1e-17) break;
  }
  cplx e1 = hh * std::exp(-z);
  return sign * (constants::pi / 2.0 + e1.imag());
}

double si_over_x(double x) {
  double ax = std::abs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 18.0 * (1.0 - 3.0 * x2 / 100.0);
  }
  return sine_integral(ax) / ax;
}

Quadrature gauss_legendre(int n, double a, double b) {
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double t = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * t * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (t * p1 - p2) / (t * t - 1.0);
      double dt = -p1 / pp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    q.nodes[static_cast<std::size_t>(i)] = xm - xl * t;
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = xm + xl * t;
    double w = 2.0 * xl / ((1.0 - t * t) * pp * pp);
    q.weights[static_cast<std::size_t>(i)] = w;
    q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return q;
}

Quadrature gauss_hermite(int n) {
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  int m = (n + 1) / 2;
  double t = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      t = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      t -= 1.14 * std::pow(static_cast<double>(n), 0.426) / t;
    } else if (i == 2) {
      t = 1.86 * t - 0.86 * q.nodes[static_cast<std::size_t>(n - 1)];
    } else if (i == 3) {
      t = 1.91 * t - 0.91 * q.nodes[static_cast<std::size_t>(n - 2)];
    } else {
      t = 2.0 * t - q.nodes[static_cast<std::size_t>(n - i + 1)];
    }
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = t * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double dt = -p1 / pp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = t;
    q.nodes[static_cast<std::size_t>(i)] = -t;
    double w = 2.0 / (pp * pp);
    q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    q.weights[static_cast<std::size_t>(i)] = w;
  }
  if (n % 2 == 1) q.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return q;
}

}  // namespace talbot
