// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "talbot/grating.hpp"
#include "talbot/materials.hpp"

namespace talbot {

// Thermal motional state of the trapped particle at release.
struct SourceState {
  double sigma_x;         // m
  double sigma_p;         // kg m/s
  double trap_frequency;  // Hz
  double temperature;     // K
  double mass;            // kg
};

enum class TrapModel { exact, classical };

// exact: coth forms of the thermal harmonic oscillator;
// classical: equipartition limits sqrt(kB T / 4 pi^2 m nu^2), sqrt(m kB T).
SourceState trap_state(double mass, double frequency, double temperature, TrapModel model);

// t_T = m d^2 / h.
double talbot_time(double mass, double period);

struct Timeline {
  double t1;      // s, release -> grating
  double t2;      // s, grating -> detection
  double period;  // m, grating period d
  double mass;    // kg

  double talbot() const { return talbot_time(mass, period); }
  double total() const { return t1 + t2; }
  double magnification() const { return (t1 + t2) / t1; }
  double magnified_period() const { return magnification() * period; }
};

Timeline make_timeline(double t1, double t2, double mass, double period);

struct PointSourceDiagnostics {
  double momentum_ratio;  // sigma_p d / h, should be >> 1
  double position_ratio;  // sigma_x / d, should be << 1
  bool momentum_ok;       // >= 10
  bool position_ok;       // <= 0.3
  bool pass() const { return momentum_ok && position_ok; }
};

PointSourceDiagnostics point_source_validity(const SourceState& source, double period);

// Piecewise-constant acceleration a(t) as (duration, value) segments;
// zero after the last segment.
class AccelerationProfile {
 public:
  AccelerationProfile() = default;
  explicit AccelerationProfile(std::vector<std::pair<double, double>> segments);

  // Delta x(t) = int_0^t dt' int_0^t' a, in closed form.
  double displacement(double t) const;
  bool empty() const { return segments_.empty(); }

 private:
  std::vector<std::pair<double, double>> segments_;
};

// delta x = Delta x(t1+t2) - mu Delta x(t1).
double fringe_shift(const AccelerationProfile& accel, const Timeline& timeline);

// Per-order decoherence reduction factor R_n; must satisfy R_0 = 1.
using ReductionFn = std::function<double(int)>;

struct GratingConfig {
  GratingMode mode = GratingMode::quantum;
  bool include_absorption = true;
  bool include_scattering = true;
};

// The periodic fringe density w(x) near the center of the dispersed cloud:
// w(x) = prefactor * sum_n A_n exp(2 pi i n (x - shift) / period).
struct FringePattern {
  int cutoff;
  std::vector<std::complex<double>> amplitudes;  // index n + cutoff
  double period;     // magnified period D
  double prefactor;  // m / (sqrt(2 pi) sigma_p (t1+t2))
  double shift;      // m

  std::complex<double> amplitude(int n) const {
    if (n < -cutoff || n > cutoff) return 0.0;
    return amplitudes[static_cast<std::size_t>(n + cutoff)];
  }
  // Real density; the imaginary residual of the Fourier sum is discarded
  // (checked by max_imag_ratio in tests).
  double evaluate(double x) const;
  std::complex<double> evaluate_complex(double x) const;
  double mean() const;  // prefactor * A_0
  double max_imag_ratio(int samples = 512) const;
};

FringePattern fringe_pattern(const SourceState& source, const Timeline& timeline,
                             const GratingPulse& pulse, const GratingConfig& config,
                             const ReductionFn& reductions,
                             const AccelerationProfile& accel = {});

// Sinusoidal visibility 2 |A_1| / A_0 of a computed pattern.
double visibility_sin(const FringePattern& pattern);

// Same quantity from the order-0/1 amplitudes alone; usable where the full
// harmonic series converges too slowly to represent the density (classical
// lensing caustics) but the visibility is still well defined.
double visibility_sin(const SourceState& source, const Timeline& timeline,
                      const GratingPulse& pulse, const GratingConfig& config,
                      const ReductionFn& reductions);

struct DetectionProbability {
  double value;
  bool window_warning;  // P > 1: window exceeds the envelope approximation
};

// P = W m / (sqrt(2 pi) sigma_p (t1+t2)).
DetectionProbability detection_probability(const SourceState& source, const Timeline& timeline,
                                           double window);

enum class ScanVariable { t2, phi0 };

struct CarpetRequest {
  ScanVariable variable = ScanVariable::t2;
  std::vector<double> values;         // scan grid
  int points_per_period = 512;        // x resolution
  double half_periods = 2.0;          // x in [-half*D, +half*D]
  int threads = 1;
};

struct Carpet {
  std::vector<double> scan_values;
  std::vector<double> x;                  // columns, m
  std::vector<std::vector<double>> rows;  // one w(x) row per scan value
};

// Builders produce the pattern for a given scan value; rows are evaluated
// independently (data-parallel when threads > 1).
using PatternBuilder = std::function<FringePattern(double)>;

Carpet carpet(const CarpetRequest& request, const PatternBuilder& builder);

struct TrapReadout {
  double sensitivity;  // 1/m, relative signal change per displacement
  double shot_noise;   // 1/sqrt(Hz), relative
};

// sensitivity = 8 Re(alpha) / (eps0 w0^3 lambda sqrt(pi));
// shot noise sqrt(e / (responsivity P)), or sqrt(2e/..) when double_shot is set.
TrapReadout trap_readout(const Particle& particle, double waist, double wavelength, double power,
                         double responsivity, int averaging_periods = 1, bool double_shot = false);

}  // namespace talbot
