// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace talbot::cli {

// Parses "126ms", "177.5nm", "1e-10mbar", "4pi", "1e6amu", "500uJ", plain
// numbers.  Returns SI (rad for "pi").  Throws config_error on junk.
double parse_quantity(const std::string& text, const std::string& field);

}  // namespace talbot::cli
