// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// CODATA-2018 values, shared by every module so that derived quantities are
// reproducible bit-for-bit across the toolkit.
namespace talbot::constants {

inline constexpr double planck = 6.62607015e-34;            // J s
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double light_speed = 2.99792458e8;         // m/s
inline constexpr double boltzmann = 1.380649e-23;           // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;    // kg
inline constexpr double elementary_charge = 1.602176634e-19;     // C
inline constexpr double standard_gravity = 9.81;            // m/s^2
inline constexpr double pi = 3.14159265358979323846;

}  // namespace talbot::constants
