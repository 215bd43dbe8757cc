// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <thread>

#include "output.hpp"
#include "talbot/constants.hpp"
#include "talbot/decoherence.hpp"
#include "talbot/errors.hpp"
#include "talbot/oracle.hpp"
#include "talbot/special_functions.hpp"

namespace talbot::cli {

namespace {

using nlohmann::json;

ChannelToggles effective_channels(const Experiment& exp, const RunOptions& opt) {
  ChannelToggles t = exp.channels();
  if (opt.no_decoherence) t = ChannelToggles{false, false, false, false, false};
  return t;
}

GratingConfig effective_grating(const Experiment& exp, const RunOptions& opt) {
  GratingConfig c = exp.grating_config();
  if (opt.classical) c.mode = GratingMode::classical;
  return c;
}

void warn_point_source(const Experiment& exp) {
  static bool warned = false;
  auto diag = point_source_validity(exp.source(), exp.timeline().period);
  if (!diag.pass() && !warned) {
    warned = true;
    std::cerr << "warning: point-source regime marginal (sigma_p d/h = " << diag.momentum_ratio
              << ", sigma_x/d = " << diag.position_ratio << "); proceeding anyway\n";
  }
}

ReductionFn make_reductions(const Experiment& exp, const RunOptions& opt) {
  return make_reduction_function(exp.particle(), exp.environment(), exp.timeline(),
                                 exp.internal_temperature(), exp.csl(),
                                 effective_channels(exp, opt));
}

FringePattern build_pattern_with(const Experiment& exp, const GratingConfig& grating,
                                 const ReductionFn& red) {
  warn_point_source(exp);
  return fringe_pattern(exp.source(), exp.timeline(), exp.pulse(), grating, red,
                        exp.acceleration());
}

FringePattern build_pattern(const Experiment& exp, const RunOptions& opt,
                            const GratingConfig& grating) {
  return build_pattern_with(exp, grating, make_reductions(exp, opt));
}

// Scanning phi0 or the pulse energy leaves the decoherence factors unchanged;
// reuse them across the scan in that case.
bool scan_touches_reductions(const std::string& variable) {
  return variable != "phi0" && variable != "pulse_energy";
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = static_cast<std::size_t>(t); i < count; i += static_cast<std::size_t>(threads)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

int cmd_pattern(const Experiment& exp, const RunOptions& opt) {
  FringePattern pat = build_pattern(exp, opt, effective_grating(exp, opt));
  std::string stem = join_path(opt.out_dir, "pattern");
  CsvWriter csv(stem + ".csv");
  csv.header({"x_m", "w_per_m"});
  int ppp = exp.points_per_period();
  double half = exp.half_periods();
  int n = static_cast<int>(std::lround(2.0 * half * ppp));
  for (int i = 0; i < n; ++i) {
    double x = (i - n / 2) * pat.period / ppp;
    csv.row({x, pat.evaluate(x)});
  }
  double vis = visibility_sin(pat);
  write_meta(stem, exp.resolved(), "pattern", opt.seed, opt.threads,
             json{{"visibility_sin", vis},
                  {"magnified_period_m", pat.period},
                  {"fringe_shift_m", pat.shift},
                  {"prefactor_per_m", pat.prefactor}});
  std::cout << "pattern: D = " << format_double(pat.period)
            << " m, visibility_sin = " << format_double(vis) << "\n";
  return 0;
}

int cmd_carpet(const Experiment& exp, const RunOptions& opt) {
  ScanSpec spec;
  if (auto s = exp.scan()) {
    spec = *s;
    if (spec.variable != "t2" && spec.variable != "phi0") {
      throw config_error("carpet scans t2 or phi0", "scan.variable");
    }
  } else {
    spec.variable = "t2";
    spec.start = 0.002;
    spec.stop = 2.0 * exp.timeline().talbot();
    spec.steps = 128;
  }

  CarpetRequest req;
  req.variable = spec.variable == "t2" ? ScanVariable::t2 : ScanVariable::phi0;
  req.values = spec.grid();
  req.points_per_period = exp.points_per_period();
  req.half_periods = exp.half_periods();
  req.threads = opt.threads;

  GratingConfig grating = effective_grating(exp, opt);
  auto builder = [&](double v) {
    Experiment e = exp.with_value(spec.variable, v);
    return build_pattern(e, opt, grating);
  };
  Carpet c = carpet(req, builder);

  std::string stem = join_path(opt.out_dir, "carpet");
  CsvWriter csv(stem + ".csv");
  std::vector<std::string> names{spec.variable};
  for (double x : c.x) names.push_back("x=" + format_double(x));
  csv.header(names);
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    std::vector<double> row;
    row.reserve(c.x.size() + 1);
    row.push_back(c.scan_values[r]);
    row.insert(row.end(), c.rows[r].begin(), c.rows[r].end());
    csv.row(row);
  }
  json extra{{"x_grid_m", c.x}, {"scan_variable", spec.variable}};
  write_meta(stem, exp.resolved(), "carpet", opt.seed, opt.threads, extra);
  std::cout << "carpet: " << c.rows.size() << " rows x " << c.x.size() << " columns\n";
  return 0;
}

int cmd_visibility(const Experiment& exp, const RunOptions& opt) {
  ScanSpec spec;
  if (auto s = exp.scan()) {
    spec = *s;
  } else {
    spec.variable = "phi0";
    spec.start = 0.0;
    spec.stop = 4.0 * constants::pi;
    spec.steps = 200;
  }
  auto values = spec.grid();
  std::vector<double> vq(values.size()), vc(values.size());
  GratingConfig gq = exp.grating_config();
  gq.mode = GratingMode::quantum;
  GratingConfig gc = gq;
  gc.mode = GratingMode::classical;
  bool shared_red = !scan_touches_reductions(spec.variable);
  ReductionFn red = shared_red ? make_reductions(exp, opt) : ReductionFn{};
  parallel_for(values.size(), opt.threads, [&](std::size_t i) {
    Experiment e = exp.with_value(spec.variable, values[i]);
    ReductionFn r = shared_red ? red : make_reductions(e, opt);
    warn_point_source(e);
    vq[i] = visibility_sin(e.source(), e.timeline(), e.pulse(), gq, r);
    vc[i] = visibility_sin(e.source(), e.timeline(), e.pulse(), gc, r);
  });

  std::string stem = join_path(opt.out_dir, "visibility");
  CsvWriter csv(stem + ".csv");
  csv.header({spec.variable, "visibility_quantum", "visibility_classical"});
  for (std::size_t i = 0; i < values.size(); ++i) csv.row({values[i], vq[i], vc[i]});

  auto it = std::max_element(vq.begin(), vq.end());
  json extra{{"scan_variable", spec.variable},
             {"max_quantum_visibility", *it},
             {"argmax", values[static_cast<std::size_t>(it - vq.begin())]}};
  write_meta(stem, exp.resolved(), "visibility", opt.seed, opt.threads, extra);
  std::cout << "visibility: max quantum " << format_double(*it) << " at " << spec.variable << " = "
            << format_double(values[static_cast<std::size_t>(it - vq.begin())]) << "\n";
  return 0;
}

int cmd_surface(const Experiment& exp, const RunOptions& opt) {
  const auto& sj = exp.resolved().at("surface");
  auto axis = [&](const char* key) {
    ScanSpec s;
    s.variable = key;
    s.start = sj.at(key).at("start").get<double>();
    s.stop = sj.at(key).at("stop").get<double>();
    s.steps = sj.at(key).at("steps").get<int>();
    return s;
  };
  ScanSpec phi_axis = axis("phi0");
  ScanSpec t2_axis = axis("t2");
  auto phis = phi_axis.grid();
  auto t2s = t2_axis.grid();

  for (GratingMode mode : {GratingMode::quantum, GratingMode::classical}) {
    GratingConfig g = exp.grating_config();
    g.mode = mode;
    std::vector<std::vector<double>> grid(t2s.size(), std::vector<double>(phis.size()));
    parallel_for(t2s.size(), opt.threads, [&](std::size_t r) {
      Experiment row_exp = exp.with_value("t2", t2s[r]);
      ReductionFn red = make_reductions(row_exp, opt);  // shared along the phi0 row
      for (std::size_t cidx = 0; cidx < phis.size(); ++cidx) {
        Experiment e = row_exp.with_value("phi0", phis[cidx]);
        grid[r][cidx] = visibility_sin(e.source(), e.timeline(), e.pulse(), g, red);
      }
    });
    std::string name = mode == GratingMode::quantum ? "surface_quantum" : "surface_classical";
    std::string stem = join_path(opt.out_dir, name);
    CsvWriter csv(stem + ".csv");
    std::vector<std::string> names{"t2_s"};
    for (double p : phis) names.push_back("phi0=" + format_double(p));
    csv.header(names);
    for (std::size_t r = 0; r < t2s.size(); ++r) {
      std::vector<double> row{t2s[r]};
      row.insert(row.end(), grid[r].begin(), grid[r].end());
      csv.row(row);
    }
    write_meta(stem, exp.resolved(), "surface", opt.seed, opt.threads,
               json{{"phi0_grid", phis}, {"t2_grid", t2s}});
  }
  std::cout << "surface: " << t2s.size() << " x " << phis.size() << " (quantum + classical)\n";
  return 0;
}

int cmd_heating(const Experiment& exp, const RunOptions& opt) {
  const auto& hj = exp.resolved().at("heating");
  std::vector<ThermalPhase> phases;
  for (const auto& ph : hj.at("phases")) {
    phases.push_back(ThermalPhase{ph.at("duration_s").get<double>(),
                                  ph.at("intensity_W_m2").get<double>(),
                                  ph.value("wavelength_m", 1.55e-6)});
  }
  double t0 = hj.at("initial_temperature_K").get<double>();
  double tenv = exp.resolved().at("environment").at("temperature_K").get<double>();
  ThermalTimeline tl = evolve_temperature(exp.particle(), phases, t0, tenv);

  std::string stem = join_path(opt.out_dir, "heating");
  CsvWriter csv(stem + ".csv");
  csv.header({"t_s", "T_int_K"});
  for (const auto& s : tl.samples) csv.row({s.time, s.temperature});

  json extra{{"final_temperature_K", tl.samples.back().temperature}};
  if (!phases.empty() && phases.front().intensity > 0.0) {
    extra["equilibrium_temperature_K"] = equilibrium_temperature(
        exp.particle(), phases.front().intensity, phases.front().wavelength, tenv);
    extra["initial_heating_rate_K_s"] =
        heating_rhs(exp.particle(), phases.front().intensity, phases.front().wavelength, tenv, t0);
  }
  write_meta(stem, exp.resolved(), "heating", opt.seed, opt.threads, extra);
  std::cout << "heating: " << tl.samples.size() << " samples, final T_int = "
            << format_double(tl.samples.back().temperature) << " K\n";
  return 0;
}

int cmd_decoherence_map(const Experiment& exp, const RunOptions& opt) {
  const auto& mj = exp.resolved().at("decoherence_map");
  auto lin = [](const json& j, const char* a, const char* b, const char* c) {
    ScanSpec s;
    s.start = j.at(a).get<double>();
    s.stop = j.at(b).get<double>();
    s.steps = j.at(c).get<int>();
    return s.grid();
  };
  auto temps = lin(mj.at("t_int"), "start", "stop", "steps");
  auto times = lin(mj.at("time"), "start", "stop", "steps");
  double ratio = mj.at("t1_over_t2").get<double>();  // t1/t2

  Particle p = exp.particle();
  Environment env = exp.environment();
  CslParams csl = exp.csl();
  ChannelToggles channels = effective_channels(exp, opt);
  double d = exp.resolved().at("grating").at("wavelength_m").get<double>() / 2.0;
  double tenv = env.temperature;

  std::vector<std::vector<double>> grid(temps.size(), std::vector<double>(times.size()));
  parallel_for(temps.size(), opt.threads, [&](std::size_t r) {
    for (std::size_t cidx = 0; cidx < times.size(); ++cidx) {
      double total = times[cidx];
      double t2 = total / (1.0 + ratio);
      double t1 = total - t2;
      Timeline tl = make_timeline(t1, t2, p.mass, d);
      Particle pr = p;
      pr.internal_temperature = temps[r];
      auto evolved = evolve_temperature(pr, {{total, 0.0, 1.55e-6}}, temps[r], tenv);
      auto profile = TemperatureProfile::from_timeline(evolved);
      grid[r][cidx] = total_reduction(pr, env, tl, profile, csl, channels, 1).combined();
    }
  });

  std::string stem = join_path(opt.out_dir, "decoherence_map");
  CsvWriter csv(stem + ".csv");
  std::vector<std::string> names{"T_int0_K"};
  for (double t : times) names.push_back("t=" + format_double(t));
  csv.header(names);
  for (std::size_t r = 0; r < temps.size(); ++r) {
    std::vector<double> row{temps[r]};
    row.insert(row.end(), grid[r].begin(), grid[r].end());
    csv.row(row);
  }
  write_meta(stem, exp.resolved(), "decoherence-map", opt.seed, opt.threads,
             json{{"t_int_grid_K", temps}, {"time_grid_s", times}});
  std::cout << "decoherence-map: " << temps.size() << " x " << times.size() << " R_1 values\n";
  return 0;
}

int cmd_csl(const Experiment& exp, const RunOptions& opt) {
  double bound = csl_bound(opt.visibility_ratio, exp.particle(), exp.timeline(),
                           exp.csl().localization_length);
  std::string stem = join_path(opt.out_dir, "csl");
  CsvWriter csv(stem + ".csv");
  csv.header({"visibility_ratio", "lambda_csl_bound_Hz"});
  csv.row({opt.visibility_ratio, bound});
  write_meta(stem, exp.resolved(), "csl", opt.seed, opt.threads,
             json{{"lambda_csl_bound_Hz", bound}});
  std::cout << "lambda_CSL < " << format_double(bound) << " Hz (visibility ratio "
            << format_double(opt.visibility_ratio) << ")\n";
  return 0;
}

int cmd_material_info(const Experiment& exp, const RunOptions& opt) {
  Particle p = exp.particle();
  auto resp = optical_response(p, opt.wavelength);
  auto n = refractive_index(*p.material, opt.wavelength);
  std::string stem = join_path(opt.out_dir, "material_info");
  CsvWriter csv(stem + ".csv");
  csv.header({"wavelength_m", "n_real", "n_imag", "beta", "eta", "sigma_abs_m2", "sigma_sca_m2",
              "alpha_re_SI", "alpha_im_SI", "radius_m"});
  csv.row({opt.wavelength, n.value.real(), n.value.imag(), resp.beta, resp.eta, resp.sigma_abs,
           resp.sigma_sca, resp.alpha.real(), resp.alpha.imag(), p.radius});
  write_meta(stem, exp.resolved(), "material-info", opt.seed, opt.threads,
             json{{"beta", resp.beta}, {"eta", resp.eta}});
  std::cout << p.material->name() << " at " << format_double(opt.wavelength) << " m: n = "
            << format_double(n.value.real()) << " + " << format_double(n.value.imag())
            << "i, beta = " << format_double(resp.beta) << ", eta = " << format_double(resp.eta)
            << (n.clamped ? "  (clamped to tabulated range)" : "") << "\n";
  return 0;
}

int cmd_validate(const Experiment& exp, const RunOptions& opt) {
  using std::cout;
  bool all_ok = true;
  auto report = [&](const char* name, double value, double limit) {
    bool ok = value < limit;
    all_ok = all_ok && ok;
    cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << format_double(value)
         << " (limit " << format_double(limit) << ")\n";
  };

  SourceState src = exp.source();
  Timeline tl = exp.timeline();
  double phi0 = exp.phi0();
  double d = tl.period;

  // (a) wave-propagation oracle vs the closed-form pattern, central period
  {
    oracle::WaveGridSpec spec;
    auto phase = [&](double x) { return phi0 * std::pow(std::cos(constants::pi * x / d), 2); };
    auto wave = oracle::propagate_point_source(src.sigma_x, src.sigma_p, src.mass, tl.t1, phase,
                                               tl.t2, spec);
    GratingConfig cfg{GratingMode::quantum, false, false};
    FringePattern pat = fringe_pattern(src, tl, GratingPulse{2.0 * d, d, 0.0, 1.0, phi0, 0.0, 0.0},
                                       cfg, nullptr);
    double big_d = tl.magnified_period();
    double num_mean = 0.0, cf_mean = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < wave.x.size(); ++i) {
      if (std::abs(wave.x[i]) <= big_d / 2.0) {
        num_mean += wave.density[i];
        cf_mean += pat.evaluate(wave.x[i]);
        ++count;
      }
    }
    double linf = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < wave.x.size(); ++i) {
      if (std::abs(wave.x[i]) <= big_d / 2.0) {
        double a = wave.density[i] / num_mean;
        double b = pat.evaluate(wave.x[i]) / cf_mean;
        linf = std::max(linf, std::abs(a - b));
        scale = std::max(scale, std::abs(b));
      }
    }
    (void)count;
    report("wave oracle vs closed form (rel Linf, central period)", linf / scale, 1e-3);
  }

  // (b) Monte Carlo vs the classical closed form
  {
    auto mc = oracle::classical_monte_carlo(1000000, src, tl, phi0, opt.seed, 256, opt.threads);
    GratingConfig cfg{GratingMode::classical, false, false};
    FringePattern pat = fringe_pattern(src, tl, GratingPulse{2.0 * d, d, 0.0, 1.0, phi0, 0.0, 0.0},
                                       cfg, nullptr);
    double vref = visibility_sin(pat);
    report("Monte Carlo visibility vs classical closed form (|dV| / 3 sigma)",
           std::abs(mc.visibility - vref) / (3.0 * mc.visibility_sigma), 1.0);
  }

  // (c) Graf closed form vs direct convolution
  {
    double beta = 0.06;
    double worst = 0.0;
    for (double xi : {0.1, 0.5, 0.881, 0.99}) {
      for (double f : {1.0, 1.4, 4.0}) {
        for (int n : {0, 1, 2, 5}) {
          double closed = coeff_with_absorption(n, xi, f * constants::pi, beta, GratingMode::quantum);
          auto conv = oracle::coeff_convolution(n, xi, f * constants::pi, beta, 0.0);
          worst = std::max(worst, std::abs(closed - conv.real()));
        }
      }
    }
    report("Graf closed form vs convolution (max abs diff)", worst, 1e-10);
  }

  cout << (all_ok ? "validate: all oracle checks passed\n" : "validate: FAILURES above\n");
  return all_ok ? 0 : 3;
}

}  // namespace talbot::cli
