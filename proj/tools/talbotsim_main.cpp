// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
//
// talbotsim: near-field interference of optically trapped, free-falling
// dielectric nanospheres diffracted by a single standing-wave pulse.
#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "../src/cli/commands.hpp"
#include "../src/cli/units.hpp"
#include "talbot/errors.hpp"

namespace {

using talbot::cli::Experiment;
using talbot::cli::RunOptions;

// "--scan phi0=0:4pi:200" -> scan block with unit-aware endpoints.
nlohmann::json parse_scan_flag(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw talbot::config_error("expected <var>=<start>:<stop>:<steps>", "--scan");
  }
  std::string var = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  auto c1 = rest.find(':');
  auto c2 = rest.rfind(':');
  if (c1 == std::string::npos || c2 == c1) {
    throw talbot::config_error("expected <var>=<start>:<stop>:<steps>", "--scan");
  }
  nlohmann::json scan;
  scan["variable"] = var;
  scan["start"] = talbot::cli::parse_quantity(rest.substr(0, c1), "--scan start");
  scan["stop"] = talbot::cli::parse_quantity(rest.substr(c1 + 1, c2 - c1 - 1), "--scan stop");
  scan["steps"] = std::stoi(rest.substr(c2 + 1));
  return scan;
}

nlohmann::json parse_channels_flag(const std::string& text) {
  nlohmann::json d;
  d["collision"] = false;
  d["absorption"] = false;
  d["scattering"] = false;
  d["emission"] = false;
  d["csl"] = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok == "col") {
      d["collision"] = true;
    } else if (tok == "abs") {
      d["absorption"] = true;
    } else if (tok == "sca") {
      d["scattering"] = true;
    } else if (tok == "emi") {
      d["emission"] = true;
    } else if (tok == "csl") {
      d["csl"] = true;
    } else if (!tok.empty()) {
      throw talbot::config_error("unknown channel '" + tok + "' (col, abs, sca, emi, csl)",
                                 "--channels");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"talbotsim: single-pulse Talbot interferometry of levitated nanospheres"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string scan_flag;
  std::string channels_flag;
  RunOptions opt;
  std::string wavelength_flag;

  app.add_option("--config", config_path, "experiment config JSON (SI units)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", opt.seed, "random seed (Monte Carlo oracle)");
  app.add_option("--threads", opt.threads, "worker threads for scans");
  app.add_flag("--classical", opt.classical, "ballistic (classical) grating transformation");
  app.add_flag("--no-decoherence", opt.no_decoherence, "disable all decoherence channels");
  app.add_option("--scan", scan_flag, "<var>=<start>:<stop>:<steps>, unit suffixes allowed");
  app.add_option("--channels", channels_flag, "comma list of col,abs,sca,emi,csl");

  auto* sub_pattern = app.add_subcommand("pattern", "single fringe pattern w(x)");
  auto* sub_carpet = app.add_subcommand("carpet", "w(x) rows over a t2 or phi0 scan");
  auto* sub_visibility = app.add_subcommand("visibility", "quantum + classical visibility scan");
  auto* sub_surface = app.add_subcommand("surface", "visibility over the (phi0, t2) grid");
  auto* sub_heating = app.add_subcommand("heating", "internal temperature vs time");
  auto* sub_map = app.add_subcommand("decoherence-map", "R_1 over (T_int(0), total time)");
  auto* sub_csl = app.add_subcommand("csl", "CSL rate bound from a visibility ratio");
  auto* sub_material = app.add_subcommand("material-info", "optical response at a wavelength");
  auto* sub_validate = app.add_subcommand("validate", "oracle agreement suite");

  sub_csl->add_option("--visibility-ratio", opt.visibility_ratio,
                      "measured / expected visibility, in (0,1)");
  sub_material->add_option("--wavelength", wavelength_flag, "probe wavelength (e.g. 355nm)");

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json overrides = nlohmann::json::object();
    if (!scan_flag.empty()) overrides["scan"] = parse_scan_flag(scan_flag);
    if (!channels_flag.empty()) overrides["decoherence"] = parse_channels_flag(channels_flag);
    if (!wavelength_flag.empty()) {
      opt.wavelength = talbot::cli::parse_quantity(wavelength_flag, "--wavelength");
    }
    opt.out_dir = out_dir;

    Experiment exp = talbot::cli::load_experiment(config_path, overrides);

    if (sub_pattern->parsed()) return talbot::cli::cmd_pattern(exp, opt);
    if (sub_carpet->parsed()) return talbot::cli::cmd_carpet(exp, opt);
    if (sub_visibility->parsed()) return talbot::cli::cmd_visibility(exp, opt);
    if (sub_surface->parsed()) return talbot::cli::cmd_surface(exp, opt);
    if (sub_heating->parsed()) return talbot::cli::cmd_heating(exp, opt);
    if (sub_map->parsed()) return talbot::cli::cmd_decoherence_map(exp, opt);
    if (sub_csl->parsed()) return talbot::cli::cmd_csl(exp, opt);
    if (sub_material->parsed()) return talbot::cli::cmd_material_info(exp, opt);
    if (sub_validate->parsed()) return talbot::cli::cmd_validate(exp, opt);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const talbot::config_error& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const talbot::parse_error& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const talbot::data_error& ex) {
    std::cerr << "data error: " << ex.what() << "\n";
    return 2;
  } catch (const talbot::numeric_error& ex) {
    std::cerr << "numeric error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}
