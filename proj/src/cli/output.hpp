// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace talbot::cli {

// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  struct Impl;
  Impl* impl_;
};

// Writes `<stem>.meta.json`: resolved config plus run provenance.
void write_meta(const std::string& stem, const nlohmann::json& resolved_config,
                const std::string& command, std::uint64_t seed, int threads,
                const nlohmann::json& extra = nlohmann::json::object());

}  // namespace talbot::cli
