// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

namespace {

using constants::boltzmann;
using constants::hbar;
using constants::pi;
using constants::planck;

}  // namespace

SourceState trap_state(double mass, double frequency, double temperature, TrapModel model) {
  if (!(frequency > 0.0)) throw data_error("trap frequency must be positive");
  if (!(temperature > 0.0)) throw data_error("motional temperature must be positive");
  if (!(mass > 0.0)) throw data_error("mass must be positive");
  double sx = 0.0, sp = 0.0;
  if (model == TrapModel::classical) {
    sx = std::sqrt(boltzmann * temperature / (4.0 * pi * pi * mass * frequency * frequency));
    sp = std::sqrt(mass * boltzmann * temperature);
  } else {
    double arg = planck * frequency / (2.0 * boltzmann * temperature);
    double coth = 1.0 / std::tanh(arg);
    sx = std::sqrt(hbar / (4.0 * pi * mass * frequency) * coth);
    sp = std::sqrt(pi * hbar * mass * frequency * coth);
  }
  return SourceState{sx, sp, frequency, temperature, mass};
}

double talbot_time(double mass, double period) {
  if (!(mass > 0.0) || !(period > 0.0)) throw data_error("talbot_time: mass and period must be positive");
  return mass * period * period / planck;
}

Timeline make_timeline(double t1, double t2, double mass, double period) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw data_error("timeline requires t1 > 0 and t2 > 0");
  return Timeline{t1, t2, period, mass};
}

PointSourceDiagnostics point_source_validity(const SourceState& source, double period) {
  PointSourceDiagnostics d{};
  d.momentum_ratio = source.sigma_p * period / planck;
  d.position_ratio = source.sigma_x / period;
  d.momentum_ok = d.momentum_ratio >= 10.0;
  d.position_ok = d.position_ratio <= 0.3;
  return d;
}

AccelerationProfile::AccelerationProfile(std::vector<std::pair<double, double>> segments)
    : segments_(std::move(segments)) {
  for (const auto& [dur, a] : segments_) {
    (void)a;
    if (!(dur > 0.0)) throw data_error("acceleration segment duration must be positive");
  }
}

double AccelerationProfile::displacement(double t) const {
  // Within a segment of constant a starting at (x, v): x + v tau + a tau^2/2.
  double x = 0.0, v = 0.0, t0 = 0.0;
  for (const auto& [dur, a] : segments_) {
    if (t <= t0) break;
    double tau = std::min(t - t0, dur);
    x += v * tau + 0.5 * a * tau * tau;
    v += a * tau;
    t0 += dur;
  }
  if (t > t0) x += v * (t - t0);
  return x;
}

double fringe_shift(const AccelerationProfile& accel, const Timeline& timeline) {
  if (accel.empty()) return 0.0;
  double mu = timeline.magnification();
  return accel.displacement(timeline.total()) - mu * accel.displacement(timeline.t1);
}

double FringePattern::evaluate(double x) const { return evaluate_complex(x).real(); }

std::complex<double> FringePattern::evaluate_complex(double x) const {
  std::complex<double> sum = 0.0;
  double phase0 = 2.0 * pi * (x - shift) / period;
  for (int n = -cutoff; n <= cutoff; ++n) {
    sum += amplitude(n) * std::polar(1.0, n * phase0);
  }
  return prefactor * sum;
}

double FringePattern::mean() const { return prefactor * amplitude(0).real(); }

double FringePattern::max_imag_ratio(int samples) const {
  double m = std::abs(mean());
  if (m == 0.0) m = 1.0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double x = period * i / samples;
    worst = std::max(worst, std::abs(evaluate_complex(x).imag()));
  }
  return worst / m;
}

namespace {

struct OrderContext {
  double xi1;
  double beta;
  double n_sca;
  double c2;  // source-size suppression exponent per order^2

  OrderContext(const SourceState& source, const Timeline& timeline, const GratingPulse& pulse,
               const GratingConfig& config) {
    double t1 = timeline.t1, t2 = timeline.t2, d = timeline.period;
    xi1 = t1 * t2 / (timeline.talbot() * (t1 + t2));
    beta = config.include_absorption && pulse.phi0 > 0.0 ? pulse.n0 / (2.0 * pulse.phi0) : 0.0;
    n_sca = config.include_scattering ? pulse.n_scattered : 0.0;
    double sig_ratio = source.sigma_x * t2 / (d * (t1 + t2));
    c2 = 2.0 * pi * pi * sig_ratio * sig_ratio;
  }

  std::complex<double> amplitude(int n, const GratingPulse& pulse, const GratingConfig& config,
                                 const ReductionFn& reductions) const {
    double xin = n * xi1;
    std::complex<double> b = coeff_with_absorption(n, xin, pulse.phi0, beta, config.mode);
    if (n_sca > 0.0) {
      int width = 4;
      while (width < 64 && std::abs(scattering_kernel(width, xin, n_sca)) > 1e-18) ++width;
      std::complex<double> acc = 0.0;
      for (int j = -width; j <= width; ++j) {
        acc += coeff_with_absorption(n - j, xin, pulse.phi0, beta, config.mode) *
               scattering_kernel(j, xin, n_sca);
      }
      b = acc;
    }
    double env = std::exp(-c2 * static_cast<double>(n) * n);
    double red = reductions ? reductions(n) : 1.0;
    return b * env * red;
  }
};

}  // namespace

FringePattern fringe_pattern(const SourceState& source, const Timeline& timeline,
                             const GratingPulse& pulse, const GratingConfig& config,
                             const ReductionFn& reductions, const AccelerationProfile& accel) {
  OrderContext ctx(source, timeline, pulse, config);
  auto order_amplitude = [&](int n) { return ctx.amplitude(n, pulse, config, reductions); };

  constexpr int kMaxCutoff = 160;
  int cutoff = std::max(8, static_cast<int>(std::ceil(pulse.phi0 * (1.0 + 2.0 * ctx.beta))) + 8);
  for (int attempt = 0; attempt < 2; ++attempt) {
    double tail = std::abs(order_amplitude(cutoff)) + std::abs(order_amplitude(cutoff + 1));
    if (tail < 1e-12) break;
    while (cutoff <= kMaxCutoff) {
      ++cutoff;
      tail = std::abs(order_amplitude(cutoff)) + std::abs(order_amplitude(cutoff + 1));
      if (tail < 1e-12) break;
    }
    if (cutoff > kMaxCutoff) {
      if (attempt == 1) throw numeric_error("fringe pattern coefficient cutoff exceeded");
      cutoff = kMaxCutoff;
    } else {
      break;
    }
  }

  FringePattern p;
  p.cutoff = cutoff;
  p.amplitudes.resize(2 * static_cast<std::size_t>(cutoff) + 1);
  for (int n = -cutoff; n <= cutoff; ++n) {
    p.amplitudes[static_cast<std::size_t>(n + cutoff)] = order_amplitude(n);
  }
  p.period = timeline.magnified_period();
  p.prefactor = source.mass / (std::sqrt(2.0 * pi) * source.sigma_p * timeline.total());
  p.shift = fringe_shift(accel, timeline);
  return p;
}

double visibility_sin(const FringePattern& pattern) {
  double a0 = pattern.amplitude(0).real();
  if (a0 == 0.0) throw numeric_error("visibility undefined: zero mean amplitude");
  return 2.0 * std::abs(pattern.amplitude(1)) / a0;
}

double visibility_sin(const SourceState& source, const Timeline& timeline,
                      const GratingPulse& pulse, const GratingConfig& config,
                      const ReductionFn& reductions) {
  OrderContext ctx(source, timeline, pulse, config);
  double a0 = ctx.amplitude(0, pulse, config, reductions).real();
  if (a0 == 0.0) throw numeric_error("visibility undefined: zero mean amplitude");
  return 2.0 * std::abs(ctx.amplitude(1, pulse, config, reductions)) / a0;
}

DetectionProbability detection_probability(const SourceState& source, const Timeline& timeline,
                                           double window) {
  if (window < 0.0) throw data_error("detection window must be non-negative");
  double p = window * source.mass / (std::sqrt(2.0 * pi) * source.sigma_p * timeline.total());
  return DetectionProbability{p, p > 1.0};
}

Carpet carpet(const CarpetRequest& request, const PatternBuilder& builder) {
  if (request.values.empty()) throw data_error("carpet scan grid is empty");
  Carpet out;
  out.scan_values = request.values;
  out.rows.resize(request.values.size());

  // Rows share one x grid so the carpet is a matrix; the grid spans
  // [-half_periods D, +half_periods D) of the widest row period.
  FringePattern first = builder(request.values.front());
  double period_ref = first.period;
  if (request.values.size() > 1) {
    FringePattern last = builder(request.values.back());
    period_ref = std::max(period_ref, last.period);
  }
  double dcol = period_ref / request.points_per_period;
  int ncols = static_cast<int>(std::lround(2.0 * request.half_periods * request.points_per_period));
  out.x.resize(static_cast<std::size_t>(ncols));
  for (int i = 0; i < ncols; ++i) {
    out.x[static_cast<std::size_t>(i)] = (i - ncols / 2) * dcol;
  }

  auto run_row = [&](std::size_t idx) {
    FringePattern pat = idx == 0 ? first : builder(out.scan_values[idx]);
    std::vector<double> row(out.x.size());
    for (std::size_t i = 0; i < out.x.size(); ++i) row[i] = pat.evaluate(out.x[i]);
    out.rows[idx] = std::move(row);
  };

  int threads = std::max(1, request.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < out.rows.size(); ++i) run_row(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t total = out.rows.size();
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t i = static_cast<std::size_t>(t); i < total; i += static_cast<std::size_t>(threads)) {
          run_row(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

TrapReadout trap_readout(const Particle& particle, double waist, double wavelength, double power,
                         double responsivity, int averaging_periods, bool double_shot) {
  if (!(waist > 0.0) || !(wavelength > 0.0) || !(power > 0.0) || !(responsivity > 0.0)) {
    throw data_error("trap readout inputs must be positive");
  }
  (void)averaging_periods;  // boxcar averaging context; does not enter these two figures
  auto resp = optical_response(particle, wavelength);
  double sens = 8.0 * resp.alpha.real() /
                (constants::vacuum_permittivity * waist * waist * waist * wavelength * std::sqrt(pi));
  double factor = double_shot ? 2.0 : 1.0;
  double noise = std::sqrt(factor * constants::elementary_charge / (responsivity * power));
  return TrapReadout{sens, noise};
}

}  // namespace talbot
