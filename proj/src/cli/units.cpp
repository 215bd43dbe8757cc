// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "units.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot::cli {

double parse_quantity(const std::string& text, const std::string& field) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) throw config_error("expected a number, got '" + text + "'", field);
  std::string unit(end);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.erase(unit.begin());
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) unit.pop_back();
  if (unit.empty()) return value;

  static const std::map<std::string, double> scale = {
      {"s", 1.0},       {"ms", 1e-3},     {"us", 1e-6},     {"ns", 1e-9},
      {"m", 1.0},       {"mm", 1e-3},     {"um", 1e-6},     {"nm", 1e-9},
      {"K", 1.0},       {"mK", 1e-3},     {"uK", 1e-6},
      {"Pa", 1.0},      {"mbar", 100.0},  {"bar", 1e5},
      {"kg", 1.0},      {"amu", talbot::constants::atomic_mass_unit},
      {"J", 1.0},       {"mJ", 1e-3},     {"uJ", 1e-6},     {"nJ", 1e-9},
      {"eV", talbot::constants::elementary_charge},
      {"rad", 1.0},     {"pi", talbot::constants::pi},
      {"Hz", 1.0},      {"kHz", 1e3},     {"MHz", 1e6},
      {"W", 1.0},       {"mW", 1e-3},     {"uW", 1e-6},
  };
  auto it = scale.find(unit);
  if (it == scale.end()) throw config_error("unknown unit '" + unit + "' in '" + text + "'", field);
  return value * it->second;
}

}  // namespace talbot::cli
