// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/decoherence.hpp"
#include "talbot/errors.hpp"

using namespace talbot;
namespace k = talbot::constants;

namespace {

const double kMass = 1e6 * k::atomic_mass_unit;
const double kPeriod = 177.5e-9;

Particle silicon_particle() { return Particle::from_mass(kMass, Material::silicon()); }

Timeline reference_timeline() {
  double tt = talbot_time(kMass, kPeriod);
  return make_timeline(2.0 * tt, 1.6 * tt, kMass, kPeriod);
}

}  // namespace

TEST_CASE("collision rate and C6 from the van der Waals model") {
  Particle p = silicon_particle();
  Environment env;  // nitrogen defaults, 300 K, 1e-10 mbar
  CHECK(c6_coefficient(p, env) == doctest::Approx(2.113396484704184e-73).epsilon(1e-6));
  double rate = collision_rate(p, env);
  CHECK(rate == doctest::Approx(0.2558291769188595).epsilon(1e-6));

  // linear in pressure
  Environment half = env;
  half.gas_pressure *= 0.5;
  CHECK(collision_rate(p, half) == doctest::Approx(0.5 * rate).epsilon(1e-12));
  Environment zero = env;
  zero.gas_pressure = 0.0;
  CHECK(collision_rate(p, zero) == 0.0);
}

TEST_CASE("collision channel: harmless at 284 ms, 1/e time ~ 3.9 s") {
  Particle p = silicon_particle();
  Environment env;
  Timeline tl = reference_timeline();
  CHECK(tl.total() == doctest::Approx(0.28424463976047474).epsilon(1e-12));
  double r1 = reduction_collision(p, env, tl, 1);
  CHECK(1.0 - r1 == doctest::Approx(0.070137).epsilon(1e-3));
  CHECK(1.0 - r1 < 0.10);
  double rate = collision_rate(p, env);
  CHECK(1.0 / rate > tl.total());
  // 25% visibility loss is reached just past 1.1 s of total flight
  CHECK(-std::log(0.75) / rate == doctest::Approx(1.1245).epsilon(1e-3));
  CHECK(reduction_collision(p, env, tl, 0) == 1.0);
}

TEST_CASE("reduction factors: R_0 = 1, symmetry, bounds") {
  Particle p = silicon_particle();
  Environment env;
  Timeline tl = reference_timeline();
  CslParams csl{100e-9, 1e-11};
  auto t300 = TemperatureProfile::constant(300.0);

  for (int n : {1, 2, 5, 17}) {
    double ra = reduction_absorption(p, env, tl, n);
    double rs = reduction_scattering(p, env, tl, n);
    double re = reduction_emission(p, tl, t300, n);
    double rc = reduction_csl(p, tl, csl, n);
    double rg = reduction_collision(p, env, tl, n);
    for (double r : {ra, rs, re, rc, rg}) {
      CHECK(r > 0.0);
      CHECK(r <= 1.0);
    }
    CHECK(reduction_absorption(p, env, tl, -n) == doctest::Approx(ra).epsilon(1e-14));
    CHECK(reduction_scattering(p, env, tl, -n) == doctest::Approx(rs).epsilon(1e-14));
    CHECK(reduction_emission(p, tl, t300, -n) == doctest::Approx(re).epsilon(1e-14));
    CHECK(reduction_csl(p, tl, csl, -n) == doctest::Approx(rc).epsilon(1e-14));
  }
  CHECK(reduction_absorption(p, env, tl, 0) == 1.0);
  CHECK(reduction_scattering(p, env, tl, 0) == 1.0);
  CHECK(reduction_emission(p, tl, t300, 0) == 1.0);
  CHECK(reduction_csl(p, tl, csl, 0) == 1.0);
}

TEST_CASE("frozen channel values for the bundled silicon spectrum") {
  Particle p = silicon_particle();
  Environment env;
  Timeline tl = reference_timeline();
  CHECK(reduction_absorption(p, env, tl, 1) == doctest::Approx(0.9919033577319154).epsilon(2e-4));
  CHECK(reduction_scattering(p, env, tl, 1) == doctest::Approx(0.9999983786751682).epsilon(1e-6));
  CHECK(reduction_emission_const(p, tl, 300.0, 1) == doctest::Approx(0.9922350614580023).epsilon(2e-4));
  CHECK(reduction_emission_const(p, tl, 500.0, 1) == doctest::Approx(0.93864).epsilon(1e-3));
  CHECK(reduction_emission_const(p, tl, 1000.0, 1) == doctest::Approx(0.54467).epsilon(2e-3));
}

TEST_CASE("emission decoherence: monotone in T_int, silica much stronger than silicon") {
  Particle si = silicon_particle();
  Particle sio2 = Particle::from_mass(kMass, Material::silica());
  Timeline tl = reference_timeline();
  double prev = 1.0 + 1e-12;
  for (double t : {300.0, 500.0, 800.0, 1000.0, 1300.0, 1600.0}) {
    double r = reduction_emission_const(si, tl, t, 1);
    CHECK(r < prev);
    prev = r;
  }
  // at 1000 K the silica particle has essentially no fringe left
  double r_si = reduction_emission_const(si, tl, 1000.0, 1);
  double r_sio2 = reduction_emission_const(sio2, tl, 1000.0, 1);
  CHECK(r_sio2 < 1e-10);
  CHECK(r_sio2 < 1e-3 * r_si);
}

TEST_CASE("time-dependent emission equals the static form for constant T_int") {
  Particle p = silicon_particle();
  Timeline tl = reference_timeline();
  // sampled profile with constant value exercises the 64-point theta rule
  ThermalTimeline flat;
  flat.samples = {{0.0, 900.0}, {0.1, 900.0}, {0.3, 900.0}};
  auto prof = TemperatureProfile::from_timeline(flat);
  REQUIRE_FALSE(prof.is_constant());
  for (int n : {1, 3}) {
    double via_theta = reduction_emission(p, tl, prof, n);
    double direct = reduction_emission_const(p, tl, 900.0, n);
    CHECK(std::abs(via_theta - direct) < 1e-8);
  }
  // a cooling particle decoheres less than one pinned at the initial T
  ThermalTimeline cooling;
  cooling.samples = {{0.0, 1200.0}, {0.15, 900.0}, {0.3, 700.0}};
  auto cool_prof = TemperatureProfile::from_timeline(cooling);
  CHECK(reduction_emission(p, tl, cool_prof, 1) > reduction_emission_const(p, tl, 1200.0, 1));
}

TEST_CASE("monotonicity in pressure, time, CSL rate, and order") {
  Particle p = silicon_particle();
  Environment env;
  double tt = talbot_time(kMass, kPeriod);
  // pressure
  double prev = 1.1;
  for (double pg : {1e-9, 1e-8, 1e-7}) {
    Environment e2 = env;
    e2.gas_pressure = pg;
    double r = reduction_collision(p, e2, reference_timeline(), 1);
    CHECK(r < prev);
    prev = r;
  }
  // total time at fixed ratio
  prev = 1.1;
  for (double scale : {0.5, 1.0, 2.0, 4.0}) {
    Timeline tl = make_timeline(2.0 * tt * scale, 1.6 * tt * scale, kMass, kPeriod);
    double r = reduction_collision(p, env, tl, 1) * reduction_absorption(p, env, tl, 1);
    CHECK(r < prev);
    prev = r;
  }
  // CSL rate
  prev = 1.1;
  for (double lam : {1e-12, 1e-11, 1e-10}) {
    double r = reduction_csl(p, reference_timeline(), CslParams{100e-9, lam}, 1);
    CHECK(r < prev);
    prev = r;
  }
  // order |n|
  prev = 1.1;
  for (int n : {1, 2, 4, 8}) {
    double r = reduction_absorption(p, env, reference_timeline(), n);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("CSL: rate bound and limits") {
  Particle p = silicon_particle();
  Timeline tl = reference_timeline();
  SUBCASE("R_1 = 0.5 at 284 ms implies lambda ~ 1.4e-11 Hz") {
    double lam = csl_bound(0.5, p, tl, 100e-9);
    CHECK(lam == doctest::Approx(1.402867326170488e-11).epsilon(3e-3));
    // and the forward model closes the loop
    CHECK(reduction_csl(p, tl, CslParams{100e-9, lam}, 1) == doctest::Approx(0.5).epsilon(2e-3));
  }
  SUBCASE("bound vanishes as the observed ratio approaches 1") {
    double prev = csl_bound(0.5, p, tl);
    for (double ratio : {0.9, 0.99, 0.999}) {
      double lam = csl_bound(ratio, p, tl);
      CHECK(lam < prev);
      prev = lam;
    }
    CHECK(prev < 3e-14);
  }
  SUBCASE("a 42%-of-83% observation gives the same bound within 3%") {
    double lam_a = csl_bound(0.5, p, tl);
    double lam_b = csl_bound(0.42 / 0.83, p, tl);
    CHECK(lam_b == doctest::Approx(lam_a).epsilon(0.03));
  }
  SUBCASE("separation limit: R_1 -> 1 as r_c grows beyond the path separation") {
    // 1 - f -> x^2 / (12 r_c^2)
    double x1 = order_separation(tl, 1);
    for (double rc : {10.0 * x1, 100.0 * x1}) {
      CslParams csl{rc, 1e-11};
      double ln_r = std::log(reduction_csl(p, tl, csl, 1));
      double gamma = std::pow(kMass / k::atomic_mass_unit, 2) * csl.rate;
      double expected = -gamma * (x1 * x1 / (12.0 * rc * rc)) * tl.total();
      CHECK(ln_r == doctest::Approx(expected).epsilon(2e-3));
    }
    CHECK(reduction_csl(p, tl, CslParams{1.0, 1e-11}, 1) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("invalid ratios") {
    CHECK_THROWS_AS(csl_bound(0.0, p, tl), data_error);
    CHECK_THROWS_AS(csl_bound(1.0, p, tl), data_error);
  }
}

TEST_CASE("total reduction: channel additivity is exact") {
  Particle p = silicon_particle();
  Environment env;
  Timeline tl = reference_timeline();
  CslParams csl{100e-9, 1.4e-11};
  auto prof = TemperatureProfile::constant(300.0);
  ChannelToggles all{true, true, true, true, true};
  auto b = total_reduction(p, env, tl, prof, csl, all, 1);
  double sum = b.ln_collision + b.ln_absorption + b.ln_scattering + b.ln_emission + b.ln_csl;
  CHECK(b.ln_total() == sum);  // bitwise: same summation
  CHECK(b.combined() == doctest::Approx(std::exp(sum)).epsilon(1e-15));
  // against the individual channels
  CHECK(std::exp(b.ln_collision) == doctest::Approx(reduction_collision(p, env, tl, 1)).epsilon(1e-14));
  CHECK(std::exp(b.ln_csl) == doctest::Approx(reduction_csl(p, tl, csl, 1)).epsilon(1e-14));
  // channels off -> R = 1
  ChannelToggles none{false, false, false, false, false};
  CHECK(total_reduction(p, env, tl, prof, csl, none, 1).combined() == 1.0);
  // n = 0
  CHECK(total_reduction(p, env, tl, prof, csl, all, 0).combined() == 1.0);

  auto fn = make_reduction_function(p, env, tl, prof, csl, all);
  CHECK(fn(1) == doctest::Approx(b.combined()).epsilon(1e-14));
  CHECK(fn(-1) == fn(1));
  CHECK(fn(0) == 1.0);
}
