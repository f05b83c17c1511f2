// hardylab: command-line front end for the Hardy ladder laboratory.
//
// Subcommands: angles, optimize, scan, simulate, lhv, table. All output is
// deterministic; seeded commands are byte-reproducible run to run. CSV uses
// '.' decimals and LF line endings; JSON reports carry the configuration
// and seed they were produced with.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/hardy.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double degrees(double radians) { return radians * 180.0 / kPi; }

// Writes to stdout when no path was given; returns the process exit code.
int emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream stream(out_path, std::ios::binary);
  if (!stream) {
    std::cerr << "error: cannot open '" << out_path << "' for writing" << std::endl;
    return 1;
  }
  stream << payload;
  stream.close();
  if (stream.fail()) {
    std::cerr << "error: failed while writing '" << out_path << "'" << std::endl;
    return 1;
  }
  return 0;
}

ordered_json angles_json(const hardy::LadderAngles& angles) {
  ordered_json rad = ordered_json::array();
  ordered_json deg = ordered_json::array();
  for (const double theta : angles.thetas) {
    rad.push_back(theta);
    deg.push_back(degrees(theta));
  }
  return ordered_json{{"rad", std::move(rad)}, {"deg", std::move(deg)}};
}

int run_angles(int k, double t, double phi, const std::string& format,
               const std::string& out_path) {
  const hardy::LadderAngles angles = hardy::ladder_angles(k, t);
  if (format == "csv") {
    std::ostringstream csv;
    csv << "k,theta\n";
    for (std::size_t i = 0; i < angles.thetas.size(); ++i)
      csv << i << ',' << format_double(angles.thetas[i]) << '\n';
    return emit(out_path, csv.str());
  }

  const hardy::OpticalSettings bench = hardy::optical_settings(hardy::LadderConfig{k, t}, phi);
  ordered_json doc;
  doc["k"] = k;
  doc["t"] = t;
  doc["phi"] = phi;
  doc["thetas"] = angles_json(angles);
  doc["preparation"] = ordered_json{{"vbs1_T_a", bench.preparation.vbs1_T_a},
                                    {"vbs1_T_b", bench.preparation.vbs1_T_b},
                                    {"hwp1_rad", bench.preparation.hwp1_a},
                                    {"hwp1_deg", degrees(bench.preparation.hwp1_a)}};
  ordered_json analyzers = ordered_json::array();
  for (const hardy::AnalyzerOptics& optics : bench.analyzers)
    analyzers.push_back(ordered_json{{"hwp2_rad", optics.hwp2},
                                     {"hwp2_deg", degrees(optics.hwp2)},
                                     {"vbs2_R", optics.vbs2_R},
                                     {"vbs2_T", optics.vbs2_T}});
  doc["analyzers"] = std::move(analyzers);
  return emit(out_path, doc.dump(2) + "\n");
}

int run_optimize(int k, double visibility, double phi, const std::string& out_path) {
  const hardy::OptimizeResult optimum = hardy::optimize_t(k, visibility, phi);
  ordered_json doc;
  doc["k"] = k;
  doc["phi"] = phi;
  doc["visibility"] = visibility;
  doc["t_star"] = optimum.t_star;
  doc["s_star"] = optimum.s_star;
  return emit(out_path, doc.dump(2) + "\n");
}

int run_scan(int k, double t_min, double t_max, int steps, double visibility, double phi,
             const std::string& format, const std::string& out_path) {
  if (t_min > t_max) {
    std::cerr << "error: --t-min must not exceed --t-max" << std::endl;
    return 2;
  }
  std::vector<double> ts;
  ts.reserve(steps);
  for (int i = 0; i < steps; ++i)
    ts.push_back(steps == 1 ? t_min : t_min + (t_max - t_min) * i / (steps - 1));

  if (format == "csv") {
    std::ostringstream csv;
    csv << "t,P_K,S_K";
    for (int i = 0; i <= k; ++i) csv << ",theta_" << i;
    csv << '\n';
    for (const double t : ts) {
      const hardy::HardyReport report = hardy::evaluate_ladder(hardy::LadderConfig{k, t}, phi,
                                                               visibility);
      const hardy::LadderAngles angles = hardy::ladder_angles(k, t);
      csv << format_double(t) << ',' << format_double(report.hardy_fraction) << ','
          << format_double(report.s_value);
      for (const double theta : angles.thetas) csv << ',' << format_double(theta);
      csv << '\n';
    }
    return emit(out_path, csv.str());
  }

  ordered_json doc;
  doc["k"] = k;
  doc["phi"] = phi;
  doc["visibility"] = visibility;
  ordered_json rows = ordered_json::array();
  for (const double t : ts) {
    const hardy::HardyReport report = hardy::evaluate_ladder(hardy::LadderConfig{k, t}, phi,
                                                             visibility);
    ordered_json thetas = ordered_json::array();
    for (const double theta : hardy::ladder_angles(k, t).thetas) thetas.push_back(theta);
    rows.push_back(ordered_json{{"t", t},
                                {"P_K", report.hardy_fraction},
                                {"S_K", report.s_value},
                                {"thetas", std::move(thetas)}});
  }
  doc["rows"] = std::move(rows);
  return emit(out_path, doc.dump(2) + "\n");
}

ordered_json report_json(const hardy::LadderConfig& config, double phi, double visibility,
                         std::uint64_t n_per_setting, std::uint64_t seed,
                         const hardy::HardyReport& report) {
  ordered_json doc;
  doc["config"] = ordered_json{{"k", config.k},
                               {"t", config.t},
                               {"phi", phi},
                               {"visibility", visibility},
                               {"n_per_setting", n_per_setting}};
  doc["angles"] = angles_json(hardy::ladder_angles(config.k, config.t));
  ordered_json sides = ordered_json::array();
  for (const double p : report.side_terms) sides.push_back(p);
  doc["probabilities"] = ordered_json{{"hardy_fraction", report.hardy_fraction},
                                      {"bottom", report.bottom},
                                      {"side_terms", std::move(sides)}};
  doc["s_value"] = report.s_value;
  ordered_json sigma_sides = ordered_json::array();
  const hardy::HardyUncertainties& sigmas = *report.uncertainties;
  for (const double s : sigmas.side_terms) sigma_sides.push_back(s);
  doc["uncertainties"] = ordered_json{{"hardy_fraction", sigmas.hardy_fraction},
                                      {"bottom", sigmas.bottom},
                                      {"side_terms", std::move(sigma_sides)},
                                      {"s_value", sigmas.s_value}};
  doc["seed"] = seed;
  return doc;
}

int run_simulate(int k, double t, double phi, double visibility, std::uint64_t n,
                 std::uint64_t seed, const std::string& out_path) {
  const hardy::LadderConfig config{k, t};
  const hardy::HardyReport report = hardy::simulated_report(config, phi, visibility, n, seed);
  return emit(out_path, report_json(config, phi, visibility, n, seed, report).dump(2) + "\n");
}

int run_lhv(int k, const std::string& format, const std::string& out_path) {
  const std::uint64_t count = hardy::strategy_count(k);
  const double bound = hardy::lhv_max(k);
  if (format == "json") {
    ordered_json doc;
    doc["k"] = k;
    doc["strategy_count"] = count;
    doc["lhv_max"] = bound;
    return emit(out_path, doc.dump(2) + "\n");
  }
  std::ostringstream text;
  text << "K=" << k << ": max S_" << k << " over " << count
       << " deterministic local strategies = " << format_double(bound) << '\n';
  return emit(out_path, text.str());
}

int run_table(int k, double t, bool t_given, double phi, double visibility, std::uint64_t n,
              std::uint64_t seed, const std::string& out_path) {
  if (!t_given) t = hardy::optimize_t(k, 1.0, phi).t_star;
  const hardy::HardyReport report =
      hardy::simulated_report(hardy::LadderConfig{k, t}, phi, visibility, n, seed);
  const hardy::HardyUncertainties& sigmas = *report.uncertainties;

  std::ostringstream text;
  char line[128];
  std::snprintf(line, sizeof line, "K=%d  t=%.6f  V=%.3f  N=%llu  seed=%llu\n\n", k, t,
                visibility, static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(seed));
  text << line;
  const auto row = [&](const std::string& label, double p, double sigma) {
    std::snprintf(line, sizeof line, "  %-12s %8.4f ± %.4f\n", label.c_str(), p, sigma);
    text << line;
  };
  row("P(a" + std::to_string(k) + ",b" + std::to_string(k) + ")", report.hardy_fraction,
      sigmas.hardy_fraction);
  for (int step = k; step >= 1; --step) {
    const std::size_t base = 2 * static_cast<std::size_t>(step - 1);
    row("P(a" + std::to_string(step) + ",~b" + std::to_string(step - 1) + ")",
        report.side_terms[base + 1], sigmas.side_terms[base + 1]);
    row("P(~a" + std::to_string(step - 1) + ",b" + std::to_string(step) + ")",
        report.side_terms[base], sigmas.side_terms[base]);
  }
  row("P(a0,b0)", report.bottom, sigmas.bottom);
  row("S_" + std::to_string(k), report.s_value, sigmas.s_value);
  return emit(out_path, text.str());
}

struct UnitIntervalValidator : CLI::Validator {
  UnitIntervalValidator() : CLI::Validator("IN(0,1]") {
    func_ = [](std::string& input) -> std::string {
      double value = 0.0;
      try {
        value = std::stod(input);
      } catch (...) {
        return "'" + input + "' is not a number";
      }
      if (!(value > 0.0 && value <= 1.0)) return "'" + input + "' must lie in (0, 1]";
      return {};
    };
  }
};

}  // namespace

int main(int argc, char** argv) {
  const UnitIntervalValidator in_unit_interval;

  CLI::App app{"hardylab: Hardy ladder nonlocality tests on two-mode entangled states"};
  app.require_subcommand(1);

  int k = 1;
  double t = 0.46;
  double t_min = 0.1;
  double t_max = 0.9;
  int steps = 81;
  double phi = kPi;
  double visibility = 1.0;
  std::uint64_t n_per_setting = 100000;
  std::uint64_t seed = 0;
  std::string format;
  std::string out_path;

  const auto add_k = [&](CLI::App* cmd) {
    cmd->add_option("--k", k, "Number of ladder steps K (K+1 settings per side)")
        ->check(CLI::Range(1, 1000));
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Output file (default: stdout)");
  };

  CLI::App* angles_cmd = app.add_subcommand("angles", "Analyzer angle schedule for (K, t)");
  add_k(angles_cmd);
  angles_cmd->add_option("--t", t, "Amplitude ratio t in (0, 1]")->check(in_unit_interval);
  angles_cmd->add_option("--phi", phi, "Interferometer phase [rad]");
  angles_cmd->add_option("--format", format, "csv (radians only) or json (adds degrees/optics)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_out(angles_cmd);

  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "Maximize S_K over t for a given visibility");
  add_k(optimize_cmd);
  optimize_cmd->add_option("--visibility", visibility, "Fringe visibility V")
      ->check(CLI::Range(0.0, 1.0));
  optimize_cmd->add_option("--phi", phi, "Interferometer phase [rad]");
  add_out(optimize_cmd);

  CLI::App* scan_cmd = app.add_subcommand("scan", "Sweep t and tabulate P_K and S_K");
  add_k(scan_cmd);
  scan_cmd->add_option("--t-min", t_min, "Lower end of the sweep")->check(in_unit_interval);
  scan_cmd->add_option("--t-max", t_max, "Upper end of the sweep")->check(in_unit_interval);
  scan_cmd->add_option("--steps", steps, "Number of rows")->check(CLI::Range(1, 1000000));
  scan_cmd->add_option("--visibility", visibility, "Fringe visibility V")
      ->check(CLI::Range(0.0, 1.0));
  scan_cmd->add_option("--phi", phi, "Interferometer phase [rad]");
  scan_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out(scan_cmd);

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Finite-count Hardy run with seeded statistics");
  add_k(simulate_cmd);
  simulate_cmd->add_option("--t", t, "Amplitude ratio t in (0, 1]")->check(in_unit_interval);
  simulate_cmd->add_option("--phi", phi, "Interferometer phase [rad]");
  simulate_cmd->add_option("--visibility", visibility, "Fringe visibility V")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--n", n_per_setting, "Coincidences per setting pair")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  simulate_cmd->add_option("--seed", seed, "Master seed (64-bit)");
  add_out(simulate_cmd);

  CLI::App* lhv_cmd =
      app.add_subcommand("lhv", "Exhaustive classical bound over deterministic strategies");
  add_k(lhv_cmd);
  lhv_cmd->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  add_out(lhv_cmd);

  CLI::App* table_cmd =
      app.add_subcommand("table", "Simulated probability table at one working point");
  add_k(table_cmd);
  CLI::Option* table_t =
      table_cmd->add_option("--t", t, "Amplitude ratio; defaults to the V=1 optimum for K")
          ->check(in_unit_interval);
  table_cmd->add_option("--phi", phi, "Interferometer phase [rad]");
  table_cmd->add_option("--visibility", visibility, "Fringe visibility V")
      ->check(CLI::Range(0.0, 1.0));
  table_cmd->add_option("--n", n_per_setting, "Coincidences per setting pair")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  table_cmd->add_option("--seed", seed, "Master seed (64-bit)");
  add_out(table_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 2;
  }

  try {
    if (angles_cmd->parsed())
      return run_angles(k, t, phi, format.empty() ? "csv" : format, out_path);
    if (optimize_cmd->parsed()) return run_optimize(k, visibility, phi, out_path);
    if (scan_cmd->parsed())
      return run_scan(k, t_min, t_max, steps, visibility, phi, format.empty() ? "csv" : format,
                      out_path);
    if (simulate_cmd->parsed())
      return run_simulate(k, t, phi, visibility, n_per_setting, seed, out_path);
    if (lhv_cmd->parsed()) return run_lhv(k, format.empty() ? "text" : format, out_path);
    if (table_cmd->parsed())
      return run_table(k, t, table_t->count() > 0, phi, visibility, n_per_setting, seed,
                       out_path);
  } catch (const std::domain_error& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return 2;
  } catch (const std::length_error& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return 1;
  }
  return 0;
}
