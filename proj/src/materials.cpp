// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "talbot/materials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

namespace {

using constants::atomic_mass_unit;
using constants::elementary_charge;
using constants::light_speed;
using constants::pi;
using constants::vacuum_permittivity;

std::string data_dir() {
  if (const char* env = std::getenv("TALBOT_DATA_DIR")) return env;
#ifdef TALBOT_DATA_DIR
  return TALBOT_DATA_DIR;
#else
  return "data";
#endif
}

std::complex<double> clausius_mossotti(std::complex<double> n) {
  std::complex<double> eps = n * n;
  std::complex<double> den = eps + 2.0;
  if (std::abs(den) < 1e-12) {
    throw numeric_error("polarizability denominator |eps + 2| vanishes (plasmon pole)");
  }
  return (eps - 1.0) / den;
}

}  // namespace

Material::Material(std::string name, std::vector<SpectrumPoint> spectrum, const Properties& props)
    : name_(std::move(name)),
      spectrum_(std::move(spectrum)),
      density_(props.density),
      specific_heat_(props.specific_heat),
      ionization_energy_(props.ionization_energy),
      static_permittivity_(props.static_permittivity) {
  if (spectrum_.size() < 2) throw data_error("spectrum needs at least two rows: " + name_);
  std::sort(spectrum_.begin(), spectrum_.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.wavelength < b.wavelength; });
  for (std::size_t i = 0; i < spectrum_.size(); ++i) {
    const auto& p = spectrum_[i];
    if (!(p.wavelength > 0.0)) throw data_error("non-positive wavelength in spectrum: " + name_);
    if (p.n_im < 0.0) throw data_error("negative n_imag (gain medium) in spectrum: " + name_);
    if (i > 0 && !(p.wavelength > spectrum_[i - 1].wavelength)) {
      throw data_error("duplicate wavelength in spectrum: " + name_);
    }
  }
  if (static_permittivity_ <= 0.0) {
    double n_last = spectrum_.back().n_re;
    static_permittivity_ = n_last * n_last;
  }
  if (static_permittivity_ < 1.0) throw data_error("static permittivity below 1: " + name_);
  if (density_ <= 0.0 || specific_heat_ <= 0.0 || ionization_energy_ <= 0.0) {
    throw data_error("non-positive bulk property: " + name_);
  }
}

Material load_spectrum(std::istream& in, const std::string& name, const Material::Properties& props) {
  std::vector<SpectrumPoint> points;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    if (!header_seen) {
      std::string h = line.substr(first);
      while (!h.empty() && (h.back() == '\r' || h.back() == ' ')) h.pop_back();
      if (h != "wavelength_m,n_real,n_imag") {
        throw parse_error("expected header 'wavelength_m,n_real,n_imag', got '" + h + "'", lineno);
      }
      header_seen = true;
      continue;
    }
    std::array<double, 3> v{};
    std::size_t pos = first;
    for (int col = 0; col < 3; ++col) {
      std::size_t comma = line.find(',', pos);
      std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        v[static_cast<std::size_t>(col)] = std::stod(field, &used);
        while (used < field.size() && (field[used] == ' ' || field[used] == '\r')) ++used;
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw parse_error("malformed numeric field '" + field + "'", lineno);
      }
      if (col < 2) {
        if (comma == std::string::npos) throw parse_error("expected three comma-separated fields", lineno);
        pos = comma + 1;
      } else if (comma != std::string::npos) {
        throw parse_error("trailing fields after n_imag", lineno);
      }
    }
    points.push_back(SpectrumPoint{v[0], v[1], v[2]});
  }
  if (!header_seen) throw data_error("empty spectrum stream: " + name);
  if (points.size() < 2) throw data_error("spectrum needs at least two rows: " + name);
  return Material(name, std::move(points), props);
}

Material load_spectrum_file(const std::string& path, const std::string& name,
                            const Material::Properties& props) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open spectrum file: " + path);
  return load_spectrum(in, name, props);
}

const Material& Material::silicon() {
  static const Material mat = load_spectrum_file(
      data_dir() + "/silicon_nk.csv", "silicon",
      Properties{2329.0, 700.0, 5.0 * elementary_charge, 0.0});
  return mat;
}

const Material& Material::silica() {
  static const Material mat = load_spectrum_file(
      data_dir() + "/silica_nk.csv", "silica",
      Properties{2200.0, 700.0, 5.0 * elementary_charge, 0.0});
  return mat;
}

RefractiveIndex refractive_index(const Material& material, double wavelength) {
  if (!(wavelength > 0.0)) throw data_error("refractive_index: wavelength must be positive");
  const auto& pts = material.spectrum();
  if (wavelength <= pts.front().wavelength) {
    return {{pts.front().n_re, pts.front().n_im}, wavelength < pts.front().wavelength};
  }
  if (wavelength >= pts.back().wavelength) {
    return {{pts.back().n_re, pts.back().n_im}, wavelength > pts.back().wavelength};
  }
  auto it = std::lower_bound(pts.begin(), pts.end(), wavelength,
                             [](const SpectrumPoint& p, double w) { return p.wavelength < w; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  double f = (wavelength - lo.wavelength) / (hi.wavelength - lo.wavelength);
  return {{lo.n_re + f * (hi.n_re - lo.n_re), lo.n_im + f * (hi.n_im - lo.n_im)}, false};
}

Particle Particle::from_mass(double mass, const Material& material, double t_int) {
  if (!(mass > 0.0)) throw data_error("particle mass must be positive");
  if (t_int < 0.0) throw data_error("internal temperature must be non-negative");
  double radius = std::cbrt(3.0 * mass / (4.0 * pi * material.density()));
  return Particle{mass, radius, &material, t_int};
}

Particle Particle::from_radius(double radius, const Material& material, double t_int) {
  if (!(radius > 0.0)) throw data_error("particle radius must be positive");
  if (t_int < 0.0) throw data_error("internal temperature must be non-negative");
  double mass = 4.0 / 3.0 * pi * radius * radius * radius * material.density();
  return Particle{mass, radius, &material, t_int};
}

OpticalResponse optical_response(const Particle& particle, double wavelength) {
  if (!(wavelength > 0.0)) throw data_error("optical_response: wavelength must be positive");
  auto [n, clamped] = refractive_index(*particle.material, wavelength);
  std::complex<double> u = clausius_mossotti(n);
  double r3 = particle.radius * particle.radius * particle.radius;
  std::complex<double> alpha = 4.0 * pi * vacuum_permittivity * r3 * u;
  double omega = 2.0 * pi * light_speed / wavelength;
  double sigma_abs = omega * alpha.imag() / (light_speed * vacuum_permittivity);
  double k4 = std::pow(2.0 * pi / wavelength, 4);
  double sigma_sca = k4 * std::norm(alpha) / (6.0 * pi * vacuum_permittivity * vacuum_permittivity);
  double beta = alpha.real() > 0.0 ? alpha.imag() / alpha.real() : 0.0;
  double k3 = std::pow(2.0 * pi / wavelength, 3);
  double eta = alpha.real() > 0.0
                   ? k3 * std::norm(alpha) / (6.0 * pi * vacuum_permittivity * alpha.real())
                   : 0.0;
  return OpticalResponse{wavelength, alpha, beta, eta, sigma_abs, sigma_sca, clamped};
}

double static_polarizability(const Material& material, double radius) {
  double eps = material.static_permittivity();
  double r3 = radius * radius * radius;
  return 4.0 * pi * vacuum_permittivity * r3 * (eps - 1.0) / (eps + 2.0);
}

double spectral_rate(RateKind kind, const Particle& particle, double omega, double temperature) {
  if (!(omega > 0.0)) throw data_error("spectral_rate: omega must be positive");
  if (!(temperature > 0.0)) throw data_error("spectral_rate: temperature must be positive");
  double wavelength = 2.0 * pi * light_speed / omega;
  auto [n, clamped] = refractive_index(*particle.material, wavelength);
  (void)clamped;
  std::complex<double> u = clausius_mossotti(n);
  double wr = omega * particle.radius / light_speed;
  double x = constants::hbar * omega / (constants::boltzmann * temperature);
  switch (kind) {
    case RateKind::absorption: {
      if (x > 700.0) return 0.0;
      double occ = 1.0 / std::expm1(x);
      return 4.0 / pi * wr * wr * wr * occ * u.imag();
    }
    case RateKind::scattering: {
      if (x > 700.0) return 0.0;
      double occ = 1.0 / std::expm1(x);
      return 8.0 / (3.0 * pi) * std::pow(wr, 6) * occ * std::norm(u);
    }
    case RateKind::emission: {
      if (x > 700.0) return 0.0;
      return 4.0 / pi * wr * wr * wr * std::exp(-x) * u.imag();
    }
  }
  return 0.0;
}

namespace {

double integrate_rate(RateKind kind, const Particle& particle, double temperature, int grid_points,
                      double* power) {
  const Material& mat = *particle.material;
  double lmin = mat.min_wavelength();
  double lmax = mat.max_wavelength();
  double loglmin = std::log(lmin);
  double dlog = (std::log(lmax) - loglmin) / (grid_points - 1);
  double rate = 0.0, pw = 0.0;
  // omega decreases with wavelength; accumulate trapezoids in wavelength order
  // and flip the sign implied by d(omega).
  double prev_omega = 0.0, prev_g = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double lam = std::exp(loglmin + dlog * i);
    double omega = 2.0 * pi * light_speed / lam;
    double g = spectral_rate(kind, particle, omega, temperature);
    if (i > 0) {
      double dw = prev_omega - omega;
      rate += 0.5 * (g + prev_g) * dw;
      pw += 0.5 * (g * omega + prev_g * prev_omega) * dw * constants::hbar;
    }
    prev_omega = omega;
    prev_g = g;
  }
  if (power) *power = pw;
  return rate;
}

}  // namespace

IntegratedRate integrated_rate_and_power(RateKind kind, const Particle& particle,
                                         double temperature, int grid_points) {
  if (particle.material->spectrum().empty()) throw data_error("material spectrum is empty");
  double p1 = 0.0, p2 = 0.0;
  double r1 = integrate_rate(kind, particle, temperature, grid_points, &p1);
  double r2 = integrate_rate(kind, particle, temperature, 2 * grid_points, &p2);
  double scale = std::max({std::abs(r1), std::abs(r2), 1e-300});
  bool converged = std::abs(r2 - r1) <= 1e-6 * scale;
  return IntegratedRate{r2, p2, converged};
}

}  // namespace talbot
