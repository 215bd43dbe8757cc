// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace talbot {

struct SpectrumPoint {
  double wavelength;  // m
  double n_re;
  double n_im;
};

// A dielectric with a tabulated complex refractive-index spectrum.  Immutable
// after construction; all queries are pure and safe to call concurrently.
class Material {
 public:
  struct Properties {
    double density;            // kg/m^3
    double specific_heat;      // J/(kg K)
    double ionization_energy;  // J
    // <= 0 means "derive from n at the longest tabulated wavelength".
    double static_permittivity = 0.0;
  };

  Material(std::string name, std::vector<SpectrumPoint> spectrum, const Properties& props);

  const std::string& name() const { return name_; }
  const std::vector<SpectrumPoint>& spectrum() const { return spectrum_; }
  double density() const { return density_; }
  double specific_heat() const { return specific_heat_; }
  double ionization_energy() const { return ionization_energy_; }
  double static_permittivity() const { return static_permittivity_; }
  double min_wavelength() const { return spectrum_.front().wavelength; }
  double max_wavelength() const { return spectrum_.back().wavelength; }

  // Bundled spectra (data/silicon_nk.csv, data/silica_nk.csv); located via
  // the TALBOT_DATA_DIR environment variable or the compiled-in default.
  static const Material& silicon();
  static const Material& silica();

 private:
  std::string name_;
  std::vector<SpectrumPoint> spectrum_;
  double density_;
  double specific_heat_;
  double ionization_energy_;
  double static_permittivity_;
};

// Parses the spectrum CSV schema: header `wavelength_m,n_real,n_imag`,
// `#` comments allowed, at least two rows, wavelengths strictly increasing
// after sorting (duplicates rejected).
Material load_spectrum(std::istream& in, const std::string& name, const Material::Properties& props);
Material load_spectrum_file(const std::string& path, const std::string& name,
                            const Material::Properties& props);

struct RefractiveIndex {
  std::complex<double> value;
  bool clamped;  // wavelength outside the tabulated range, endpoint used
};

// Linear interpolation of (n_re, n_im) separately in wavelength.
RefractiveIndex refractive_index(const Material& material, double wavelength);

struct Particle {
  double mass;                  // kg
  double radius;                // m
  const Material* material;
  double internal_temperature;  // K

  static Particle from_mass(double mass, const Material& material, double t_int = 300.0);
  static Particle from_radius(double radius, const Material& material, double t_int = 300.0);
};

struct OpticalResponse {
  double wavelength;
  std::complex<double> alpha;  // C m^2 / V
  double beta;                 // Im(alpha)/Re(alpha)
  double eta;                  // Rayleigh-scattering analogue of beta
  double sigma_abs;            // m^2
  double sigma_sca;            // m^2
  bool clamped;
};

OpticalResponse optical_response(const Particle& particle, double wavelength);

// Real static polarizability alpha(0), from the material's static permittivity.
double static_polarizability(const Material& material, double radius);

enum class RateKind { absorption, scattering, emission };

// Spectral rate gamma(omega), dimensionless.  T is the environment temperature
// for absorption/scattering (Planck occupation) and the internal temperature
// for emission (Boltzmann factor).
double spectral_rate(RateKind kind, const Particle& particle, double omega, double temperature);

struct IntegratedRate {
  double rate;   // 1/s
  double power;  // W
  bool converged;
};

// Trapezoidal quadrature on a log-spaced wavelength grid spanning the
// tabulated range; `converged` reports the grid-doubling check (1e-6).
IntegratedRate integrated_rate_and_power(RateKind kind, const Particle& particle,
                                         double temperature, int grid_points = 4000);

}  // namespace talbot
