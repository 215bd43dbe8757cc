// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "config.hpp"

namespace talbot::cli {

struct RunOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 20260811;
  int threads = 1;
  bool classical = false;        // --classical
  bool no_decoherence = false;   // --no-decoherence
  double visibility_ratio = 0.5; // csl subcommand
  double wavelength = 355e-9;    // material-info subcommand
};

int cmd_pattern(const Experiment& exp, const RunOptions& opt);
int cmd_carpet(const Experiment& exp, const RunOptions& opt);
int cmd_visibility(const Experiment& exp, const RunOptions& opt);
int cmd_surface(const Experiment& exp, const RunOptions& opt);
int cmd_heating(const Experiment& exp, const RunOptions& opt);
int cmd_decoherence_map(const Experiment& exp, const RunOptions& opt);
int cmd_csl(const Experiment& exp, const RunOptions& opt);
int cmd_material_info(const Experiment& exp, const RunOptions& opt);
int cmd_validate(const Experiment& exp, const RunOptions& opt);

}  // namespace talbot::cli
