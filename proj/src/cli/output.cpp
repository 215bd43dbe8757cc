// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "output.hpp"

#include <charconv>
#include <fstream>

#include "talbot/errors.hpp"

namespace talbot::cli {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary);  // binary keeps \n on every platform
  if (!impl_->out) {
    delete impl_;
    throw data_error("cannot open output file: " + path);
  }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << names[i];
  }
  impl_->out << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << format_double(values[i]);
  }
  impl_->out << '\n';
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << '\n'; }

void write_meta(const std::string& stem, const nlohmann::json& resolved_config,
                const std::string& command, std::uint64_t seed, int threads,
                const nlohmann::json& extra) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["seed"] = seed;
  meta["threads"] = threads;
  meta["config"] = resolved_config;
  if (!extra.empty()) meta["result"] = extra;
  std::ofstream out(stem + ".meta.json", std::ios::binary);
  if (!out) throw data_error("cannot open output file: " + stem + ".meta.json");
  out << meta.dump(2) << '\n';
}

}  // namespace talbot::cli
