// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/rng.hpp"
#include "talbot/special_functions.hpp"

namespace talbot {

std::array<double, 2> Philox::normals(std::uint64_t counter) const {
  auto [u1, u2] = uniforms(counter);
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * constants::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace talbot

namespace talbot::oracle {

namespace {

using constants::hbar;
using constants::pi;
using constants::planck;

std::mutex fftw_plan_mutex;

// Quadrature Bessel evaluations on the integral representations; slower but
// fully independent of the recurrence-based library routines.
double bessel_j_quad(int n, double x) {
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  const int m = 1024;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    double theta = pi * (k + 0.5) / m;
    sum += std::cos(n * theta - x * std::sin(theta));
  }
  return sign * sum / m;
}

double bessel_i_quad(int n, double x) {
  int sign = 1;
  n = std::abs(n);
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  const int m = 1024;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    double theta = pi * (k + 0.5) / m;
    sum += std::exp(x * std::cos(theta)) * std::cos(n * theta);
  }
  return sign * sum / m;
}

}  // namespace

WaveResult propagate_point_source(double sigma_x, double sigma_p, double mass, double t1,
                                  const std::function<double(double)>& phase, double t2,
                                  const WaveGridSpec& spec) {
  const double sigma0 = spec.packet_width;
  if (!(sigma0 > 0.0) || sigma0 > sigma_x) {
    throw data_error("packet width must satisfy 0 < sigma_0 <= sigma_x");
  }
  const double packet_sigma_p = hbar / (2.0 * sigma0);
  if (packet_sigma_p > sigma_p) {
    throw data_error("packet momentum width exceeds the thermal momentum spread");
  }
  const double mix_sigma_x = std::sqrt(std::max(sigma_x * sigma_x - sigma0 * sigma0, 0.0));
  const double mix_sigma_p =
      std::sqrt(std::max(sigma_p * sigma_p - packet_sigma_p * packet_sigma_p, 0.0));

  // Span check: the widest packet (spreading plus the farthest momentum node)
  // must fit with an 8x margin, or the edge truncation aliases.
  {
    double t_total = t1 + t2;
    double packet_final = std::hypot(sigma0, hbar * t_total / (2.0 * mass * sigma0));
    double drift = 0.0;
    if (spec.momentum_samples > 1) {
      drift = std::sqrt(2.0 * (2.0 * spec.momentum_samples + 1.0)) * mix_sigma_p * t_total / mass;
    }
    if (spec.span < 8.0 * packet_final + 2.0 * drift) {
      throw data_error("wave oracle span too small for the final envelope");
    }
  }

  const std::size_t n = std::size_t{1} << spec.log2_points;
  const double dx = spec.span / static_cast<double>(n);
  WaveResult out;
  out.x.resize(n);
  out.density.assign(n, 0.0);
  out.leakage = 0.0;
  out.norm_drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = (static_cast<double>(i) - static_cast<double>(n / 2)) * dx;
  }

  // k grid in FFT (wrapped) order.
  std::vector<double> kgrid(n);
  for (std::size_t i = 0; i < n; ++i) {
    double idx = static_cast<double>(i);
    if (i >= n / 2) idx -= static_cast<double>(n);
    kgrid[i] = 2.0 * pi * idx / spec.span;
  }

  auto x_nodes = spec.position_samples > 1 ? gauss_hermite(spec.position_samples) : Quadrature{{0.0}, {std::sqrt(pi)}};
  auto p_nodes = spec.momentum_samples > 1 ? gauss_hermite(spec.momentum_samples) : Quadrature{{0.0}, {std::sqrt(pi)}};

  fftw_complex* buf;
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    buf = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  auto* cbuf = reinterpret_cast<std::complex<double>*>(buf);

  const double weight_norm = 1.0 / pi;  // two Gauss-Hermite weights of sqrt(pi) each
  for (std::size_t ip = 0; ip < p_nodes.nodes.size(); ++ip) {
    double p0 = std::sqrt(2.0) * mix_sigma_p * p_nodes.nodes[ip];
    for (std::size_t ix = 0; ix < x_nodes.nodes.size(); ++ix) {
      double x0 = std::sqrt(2.0) * mix_sigma_x * x_nodes.nodes[ix];
      double w = x_nodes.weights[ix] * p_nodes.weights[ip] * weight_norm;

      // Packet (x0, p0) free-evolved to t1, in closed form:
      // psi(x,t1) ~ a^{-1/2} exp(-(x-xc)^2/(4 s0^2 a) + i p0 (x - p0 t1/2m)/hbar),
      // a = 1 + i hbar t1 / (2 m s0^2), xc = x0 + p0 t1 / m.
      std::complex<double> a(1.0, hbar * t1 / (2.0 * mass * sigma0 * sigma0));
      double xc = x0 + p0 * t1 / mass;
      std::complex<double> amp = std::pow(2.0 * pi * sigma0 * sigma0, -0.25) / std::sqrt(a);
      for (std::size_t i = 0; i < n; ++i) {
        double xr = out.x[i] - xc;
        std::complex<double> gauss = std::exp(-xr * xr / (4.0 * sigma0 * sigma0 * a));
        double ph = phase(out.x[i]) + p0 * (out.x[i] - p0 * t1 / (2.0 * mass)) / hbar;
        cbuf[i] = amp * gauss * std::polar(1.0, ph);
      }

      fftw_execute(fwd);
      double total = 0.0, edge = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double m2 = std::norm(cbuf[i]);
        total += m2;
        if (std::abs(kgrid[i]) > 0.98 * pi / dx) edge += m2;
      }
      if (total > 0.0) out.leakage = std::max(out.leakage, edge / total);
      if (out.leakage > 1e-6) {
        throw numeric_error("wave oracle grid too coarse: spectral leakage above 1e-6");
      }
      for (std::size_t i = 0; i < n; ++i) {
        cbuf[i] *= std::polar(1.0 / static_cast<double>(n),
                              -hbar * kgrid[i] * kgrid[i] * t2 / (2.0 * mass));
      }
      fftw_execute(bwd);

      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(cbuf[i]);
      norm *= dx;
      out.norm_drift = std::max(out.norm_drift, std::abs(norm - 1.0));
      for (std::size_t i = 0; i < n; ++i) out.density[i] += w * std::norm(cbuf[i]);
    }
  }

  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  return out;
}

MonteCarloResult classical_monte_carlo(std::uint64_t samples, const SourceState& source,
                                       const Timeline& timeline, double phi0, std::uint64_t seed,
                                       int bins, int threads) {
  if (samples < 10000) throw data_error("classical Monte Carlo needs at least 1e4 samples");
  const double d = timeline.period;
  const double big_d = timeline.magnified_period();
  const double t1 = timeline.t1, t2 = timeline.t2;
  const double mass = source.mass;
  const double kick_scale = -hbar * phi0 * pi / d;

  const double env_sigma = std::sqrt(source.sigma_x * source.sigma_x +
                                     std::pow(source.sigma_p * timeline.total() / mass, 2));
  const double lo = -4.0 * env_sigma, hi = 4.0 * env_sigma;

  MonteCarloResult res;
  res.samples = samples;
  res.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    res.bin_edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  }

  struct Partial {
    std::vector<std::uint64_t> counts;
    std::complex<double> harmonic{0.0, 0.0};
  };
  int nthreads = std::max(1, threads);
  std::vector<Partial> partials(static_cast<std::size_t>(nthreads));
  Philox rng(seed);

  auto worker = [&](int t) {
    Partial& p = partials[static_cast<std::size_t>(t)];
    p.counts.assign(static_cast<std::size_t>(bins), 0);
    std::uint64_t begin = samples * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(nthreads);
    std::uint64_t end = samples * (static_cast<std::uint64_t>(t) + 1) / static_cast<std::uint64_t>(nthreads);
    for (std::uint64_t i = begin; i < end; ++i) {
      auto [g1, g2] = rng.normals(i);
      double x0 = source.sigma_x * g1;
      double p0 = source.sigma_p * g2;
      double xg = x0 + p0 * t1 / mass;
      double pk = p0 + kick_scale * std::sin(2.0 * pi * xg / d);
      double xf = xg + pk * t2 / mass;
      p.harmonic += std::polar(1.0, 2.0 * pi * xf / big_d);
      if (xf >= lo && xf < hi) {
        auto b = static_cast<std::size_t>((xf - lo) / (hi - lo) * bins);
        if (b < p.counts.size()) ++p.counts[b];
      }
    }
  };

  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  res.counts.assign(static_cast<std::size_t>(bins), 0);
  std::complex<double> acc = 0.0;
  for (const auto& p : partials) {
    acc += p.harmonic;
    for (std::size_t b = 0; b < res.counts.size(); ++b) res.counts[b] += p.counts[b];
  }
  res.harmonic = acc / static_cast<double>(samples);
  res.visibility = 2.0 * std::abs(res.harmonic);
  res.visibility_sigma = std::sqrt(2.0 / static_cast<double>(samples));
  return res;
}

std::complex<double> coeff_convolution(int n, double xi, double phi0, double beta,
                                       double n_scattered, GratingMode mode) {
  const double zc = mode == GratingMode::classical ? phi0 * pi * xi : phi0 * std::sin(pi * xi);
  const double za = beta * phi0 * (1.0 - std::cos(pi * xi));

  // coherent (x) absorption
  auto coherent_abs = [&](int k) {
    if (za == 0.0) return bessel_j_quad(k, zc);
    int width = 24 + static_cast<int>(std::ceil(3.0 * za));
    double sum = 0.0;
    for (int j = -width; j <= width; ++j) {
      double kern = std::exp(-za) * bessel_i_quad(j, za);
      sum += kern * bessel_j_quad(k - j, zc);
    }
    return sum;
  };

  if (n_scattered == 0.0) return coherent_abs(n);

  double z = pi * xi;
  double xang = scattering_angular_factor(z);
  double expo = -(0.5 * n_scattered) * (1.0 - 3.0 * std::cos(z) * xang);
  double arg = (0.5 * n_scattered) * (3.0 * xang - std::cos(z));
  double sum = 0.0;
  for (int j = -16; j <= 16; ++j) {
    double kern = std::exp(expo) * bessel_i_quad(j, arg);
    if (std::abs(kern) < 1e-20 && j != 0) continue;
    sum += kern * coherent_abs(n - j);
  }
  return sum;
}

}  // namespace talbot::oracle
