// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace talbot {

// Malformed input stream/file; carries the 1-based line of the offending row.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally valid input that violates a data contract (empty spectrum,
// duplicate wavelengths, non-physical values).
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-converged quadrature, step-size underflow,
// singular polarizability denominator, coefficient cutoff overflow.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration; carries the config field path.
class config_error : public std::runtime_error {
 public:
  config_error(const std::string& msg, const std::string& path)
      : std::runtime_error(msg + " [" + path + "]"), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace talbot
