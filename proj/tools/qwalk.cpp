#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"
#include "qwalk/analytic.hpp"
#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qwalk;
using cli::CsvWriter;
using cli::number;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Invocation {
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  bool pi_units = false;
  bool dump = false;
  std::map<std::string, std::string> flags;  // canonical key -> raw value
};

std::string flag_name(const std::string& canonical) {
  if (canonical == "initial.mode") return "initial";
  const auto dot = canonical.find('.');
  std::string name = dot == std::string::npos ? canonical : canonical.substr(dot + 1);
  if (canonical.rfind("initial.", 0) == 0) name = "initial_" + name;
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

json summary_header(const Invocation& inv, const ExperimentConfig& cfg) {
  json j;
  j["tool"] = "qwalk";
  j["version"] = kVersion;
  j["format_version"] = 1;
  j["command"] = inv.command;
  j["config"] = config_values(cfg);
  return j;
}

SiteSpinor initial_spinor(const ExperimentConfig& c) {
  return {c.initial_x, {c.initial_a_re, c.initial_a_im}, {c.initial_b_re, c.initial_b_im}};
}

void write_trajectory(const fs::path& dir, const std::vector<int>& xs, const Trajectory& traj) {
  CsvWriter csv(dir / "trajectory.csv", {"t", "x", "p"});
  for (std::size_t t = 0; t < traj.size(); ++t) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      csv << static_cast<int>(t) << xs[i] << traj[t][i];
      csv.end_row();
    }
  }
}

json cmd_simulate(const Invocation& inv, const ExperimentConfig& c, const fs::path& dir) {
  const int steps = c.steps.value_or(150);
  json j = summary_header(inv, c);
  json& r = j["results"];
  r["steps"] = steps;

  if (c.scenario == "wire") {
    WireDynamicsConfig w;
    w.size = c.size;
    w.theta = c.theta;
    w.left_end = c.left_end;
    w.right_end = c.right_end;
    w.phases = c.phases();
    if (c.initial == "site") w.initial = initial_spinor(c);
    w.steps = steps;
    const auto run = run_wire_dynamics(w);
    write_trajectory(dir, run.xs, run.trajectory);
    CsvWriter fin(dir / "final_distribution.csv", {"x", "p"});
    for (std::size_t i = 0; i < run.xs.size(); ++i) {
      fin << run.xs[i] << run.trajectory.back()[i];
      fin.end_row();
    }
    r["size"] = c.size;
    return j;
  }

  const SiteSpinor init = initial_spinor(c);
  if (c.scenario == "defect") {
    const Geometry g = Geometry::truncated_line(steps, std::abs(init.x));
    const CoinField field = CoinField::defect(g, c.theta_a, c.theta_b, c.phases());
    EvolveOptions opts;
    opts.record_trajectory = true;
    const auto run = evolve(WalkerState::localized(g, init.x, init.a, init.b), field, steps, opts);
    std::vector<int> xs;
    for (int i = 0; i < g.size(); ++i) xs.push_back(g.coordinate(i));
    write_trajectory(dir, xs, run.trajectory);
    const auto p = run.state.site_probabilities();
    CsvWriter fin(dir / "final_distribution.csv", {"x", "p"});
    for (std::size_t i = 0; i < xs.size(); ++i) {
      fin << xs[i] << p[i];
      fin.end_row();
    }
    r["p_center"] = p[static_cast<std::size_t>(g.index(0))];
    return j;
  }

  const bool homogeneous = c.scenario == "homogeneous";
  const double tm = homogeneous ? c.theta : c.theta_minus;
  const double tp = homogeneous ? c.theta : c.theta_plus;
  InterfaceEvolutionOptions opts;
  opts.initial = init;
  const auto run = run_interface_evolution(tm, tp, c.phases(), steps, opts);
  write_trajectory(dir, run.xs, run.trajectory);
  CsvWriter fin(dir / "final_distribution.csv", {"x", "p", "tail"});
  for (std::size_t i = 0; i < run.xs.size(); ++i) {
    fin << run.xs[i] << run.final_distribution[i] << run.tail_overlay[i];
    fin.end_row();
  }
  r["central_radius"] = run.central_radius;
  r["max_norm_deviation"] = run.max_norm_deviation;
  r["central_probability_final"] = run.central_probability.back();
  if (!homogeneous) {
    InterfaceStateSpec spec{tm, tp, c.phases(), 0.0};
    const auto s0 = interface_state(spec, run.geometry);
    spec.eta = kPi;
    const auto spi = interface_state(spec, run.geometry);
    const auto dec = decompose_initial(WalkerState::localized(run.geometry, init.x, init.a, init.b), s0.state, spi.state);
    r["xi_plus"] = s0.xi_plus;
    r["xi_minus"] = s0.xi_minus;
    r["N"] = s0.norm_constant;
    r["omega_eta0"] = s0.omega;
    r["omega_etapi"] = spi.omega;
    r["c"] = {dec.c_zero.real(), dec.c_zero.imag()};
    r["c_pi"] = {dec.c_pi.real(), dec.c_pi.imag()};
    r["trapped_weight"] = dec.trapped_weight;
    r["band_weight"] = dec.band_weight;
  }
  return j;
}

json cmd_spectrum(const Invocation& inv, const ExperimentConfig& c, const fs::path& dir) {
  json j = summary_header(inv, c);
  json& r = j["results"];
  CsvWriter csv(dir / "spectrum.csv", {"theta_A", "index", "omega", "ipr"});
  if (c.scenario == "wire") {
    const auto res = diagonalize(CoinField::wire(c.size, c.theta, c.left_end, c.right_end, c.phases()));
    for (std::size_t k = 0; k < res.size(); ++k) {
      csv << c.theta << static_cast<int>(k) << res.quasienergies[k] << res.ipr[k];
      csv.end_row();
    }
    r["max_residual"] = res.max_residual();
    r["gap_states"] = gap_state_filter(res, -0.3, 0.3).size();
    return j;
  }
  std::vector<double> grid(static_cast<std::size_t>(c.grid_points));
  for (int i = 0; i < c.grid_points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        c.grid_points == 1 ? c.grid_start : c.grid_start + (c.grid_stop - c.grid_start) * i / (c.grid_points - 1);
  }
  SweepScenario sc;
  sc.kind = c.scenario == "defect" ? Scenario::Defect : Scenario::CycleTwoSegment;
  sc.size = c.size;
  sc.segment = c.segment;
  sc.theta_b = c.theta_b;
  sc.phases = c.phases();
  const auto points = sweep_parameter(sc, grid);
  json split = json::array();
  for (const auto& pt : points) {
    for (std::size_t k = 0; k < pt.quasienergies.size(); ++k) {
      csv << pt.theta_a << static_cast<int>(k) << pt.quasienergies[k] << pt.ipr[k];
      csv.end_row();
    }
    split.push_back({{"theta_A", pt.theta_a},
                     {"splitting_plus_half_pi", pair_splitting(pt.quasienergies, 0.5 * kPi)},
                     {"splitting_minus_half_pi", pair_splitting(pt.quasienergies, -0.5 * kPi)}});
  }
  r["points"] = points.size();
  r["pair_splittings"] = split;
  return j;
}

json cmd_rabi(const Invocation& inv, const ExperimentConfig& c, const fs::path& dir) {
  RabiOptions opts;
  opts.steps = c.steps;
  const auto a = run_rabi_transport(CoinField::wire(c.size, c.theta, c.left_end, c.right_end, c.phases()), opts);
  CsvWriter csv(dir / "rabi.csv", {"t", "p_L", "p_R"});
  for (std::size_t t = 0; t < a.p_L.size(); ++t) {
    csv << static_cast<int>(t) << a.p_L[t] << a.p_R[t];
    csv.end_row();
  }
  json j = summary_header(inv, c);
  json& r = j["results"];
  r["omega"] = a.omega_pair.first;
  r["delta_omega"] = a.delta_omega;
  r["T"] = a.predicted_period;
  r["period_estimate"] = number(a.period_estimate);
  r["confinement"] = a.confinement;
  r["max_center_probability"] = a.max_center_probability;
  r["max_center_ratio"] = a.max_center_ratio;
  r["orthogonality"] = a.orthogonality;
  r["steps"] = a.steps;
  if (c.delta == 0.0 && std::abs(c.left_end + 0.5 * kPi) < 1e-12 && std::abs(c.right_end + 0.5 * kPi) < 1e-12) {
    const auto p = rabi_gap_prediction(c.theta, c.size);
    r["analytic"] = {{"delta_omega", p.delta_omega},
                     {"T", p.period},
                     {"approx_delta_omega", p.approx_delta_omega},
                     {"main_text_delta_omega", p.main_text_delta_omega}};
  }
  return j;
}

json cmd_gap_scaling(const Invocation& inv, const ExperimentConfig& c, const fs::path& dir) {
  const auto rows = run_gap_scaling(c.thetas, c.l_min, c.l_max);
  CsvWriter csv(dir / "gap_scaling.csv", {"theta", "L", "omega_exact", "omega_approx", "omega_numeric"});
  for (const auto& row : rows) {
    csv << row.theta << row.L << row.omega_exact << row.omega_approx << row.omega_numeric;
    csv.end_row();
  }
  json j = summary_header(inv, c);
  json fits = json::array();
  for (const auto& f : fit_gap_scaling(rows)) {
    fits.push_back({{"theta", f.theta},
                    {"slope", f.slope},
                    {"expected_slope", f.expected_slope},
                    {"relative_slope_error", f.slope / f.expected_slope - 1.0},
                    {"max_approx_deviation", f.max_approx_deviation}});
  }
  j["results"]["fits"] = fits;
  return j;
}

json cmd_analytic_check(const Invocation& inv, const ExperimentConfig& c, const fs::path& dir) {
  const CoinPhases ph = c.phases();
  const CoinField field = CoinField::wire(c.size, c.theta, -0.5 * kPi, -0.5 * kPi, ph);
  const auto spec = analytic_spectrum(c.theta, c.size, ph);
  const auto numeric = quasienergies(field);
  if (numeric.size() != spec.all.size()) throw NumericalError("analytic and numeric level counts differ");
  CsvWriter csv(dir / "analytic_check.csv", {"index", "omega_analytic", "omega_numeric", "abs_diff"});
  double max_diff = 0.0;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    const double d = std::abs(spec.all[k] - numeric[k]);
    max_diff = std::max(max_diff, d);
    csv << static_cast<int>(k) << spec.all[k] << numeric[k] << d;
    csv.end_row();
  }
  const auto gap_vec = gap_eigenvector(spec.gap, ph);
  double max_res = 0.0;
  for (const auto& m : gap_quartet(gap_vec, fold_angle(spec.gap.omega + ph.delta), field)) max_res = std::max(max_res, m.residual);
  const Eigen::MatrixXcd u = build_unitary(field);
  for (const auto& b : spec.band) {
    const auto v = band_eigenvector(b, ph);
    const double w = fold_angle(b.omega + ph.delta);
    max_res = std::max(max_res, (u * v.vector() - std::polar(1.0, -w) * v.vector()).norm());
  }
  json j = summary_header(inv, c);
  json& r = j["results"];
  r["levels"] = numeric.size();
  r["max_abs_diff"] = max_diff;
  r["max_eigenvector_residual"] = max_res;
  r["gap_omega"] = spec.gap.omega;
  r["gap_k"] = spec.gap.k;
  r["gap_quantization_residual"] = spec.gap.residual;
  r["band_roots"] = spec.band.size();
  return j;
}

json cmd_disorder(const Invocation& inv, const ExperimentConfig& c, const fs::path& dir) {
  DisorderConfig cfg;
  cfg.size = c.size;
  cfg.theta_lo = c.theta_lo;
  cfg.theta_hi = c.theta_hi;
  cfg.seed = c.seed;
  cfg.steps = c.steps;
  cfg.initial = c.initial == "clean-psi-l" ? DisorderInitial::CleanPsiL : DisorderInitial::LeftSite;
  const auto batch = run_disorder_batch(cfg, c.realizations);
  CsvWriter csv(dir / "disorder.csv", {"seed", "found", "omega", "delta_omega", "period_estimate", "confinement"});
  int found = 0;
  int confined = 0;
  std::vector<double> periods;
  json failures = json::array();
  for (const auto& d : batch) {
    csv << static_cast<unsigned long>(d.seed);
    if (d.analysis) {
      ++found;
      if (d.analysis->confinement > 0.8) ++confined;
      if (std::isfinite(d.analysis->period_estimate)) periods.push_back(d.analysis->period_estimate);
      csv << 1 << d.analysis->omega_pair.first << d.analysis->delta_omega << d.analysis->period_estimate
          << d.analysis->confinement;
    } else {
      failures.push_back({{"seed", d.seed}, {"reason", d.failure}});
      csv << 0 << std::string() << std::string() << std::string() << std::string();
    }
    csv.end_row();
  }
  const double mean = periods.empty() ? NAN : std::accumulate(periods.begin(), periods.end(), 0.0) / periods.size();
  double var = 0.0;
  for (double p : periods) var += (p - mean) * (p - mean);
  json j = summary_header(inv, c);
  json& r = j["results"];
  r["realizations"] = batch.size();
  r["pairs_found"] = found;
  r["confined"] = confined;
  r["confined_fraction"] = static_cast<double>(confined) / batch.size();
  r["period_mean"] = number(mean);
  r["period_std"] = number(periods.size() > 1 ? std::sqrt(var / (periods.size() - 1)) : NAN);
  r["failures"] = failures;
  return j;
}

void report_error(const std::string& kind, const std::string& message, const Invocation& inv) {
  const json rec = {{"status", "error"}, {"kind", kind}, {"command", inv.command}, {"message", message}};
  std::cerr << rec.dump() << '\n';
  std::error_code ec;
  if (!inv.command.empty() && fs::is_directory(inv.out_dir, ec)) {
    try {
      cli::write_json(fs::path(inv.out_dir) / "error.json", rec);
    } catch (...) {
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time topological quantum walks: simulation, spectra and analytic checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "Evolve a walker (interface, homogeneous, defect, wire)"},
      {"spectrum", "Diagonalize rings over a theta_A grid, or a single wire"},
      {"rabi", "Rabi transport on a wire with reflecting ends"},
      {"gap-scaling", "Gap energy versus wire half-length"},
      {"analytic-check", "Compare analytic wire spectrum and eigenvectors with diagonalization"},
      {"disorder", "Rabi transport over random bulk realizations"},
  };
  const auto keys = config_keys();
  std::map<std::string, std::map<std::string, std::string>> raw;  // command -> key -> value
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "Config file (key = value with [sections])");
    sub->add_option("--out-dir", inv.out_dir, "Directory for output files");
    sub->add_flag("--pi-units", inv.pi_units, "Interpret angle inputs as multiples of pi");
    sub->add_flag("--dump-config", inv.dump, "Print the merged config and exit");
    for (const auto& key : keys) {
      sub->add_option("--" + flag_name(key), raw[name][key], key);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    for (const auto* sub : app.get_subcommands()) inv.command = sub->get_name();
    report_error("config", e.what(), inv);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  inv.command = sub->get_name();
  RawSettings flags;
  for (const auto& key : keys) {
    if (sub->get_option("--" + flag_name(key))->count() > 0) flags.emplace_back(key, raw[inv.command][key]);
  }

  ExperimentConfig cfg;
  try {
    RawSettings settings = inv.config_path.empty() ? RawSettings{} : read_config_file(inv.config_path);
    settings.insert(settings.end(), flags.begin(), flags.end());
    apply_settings(cfg, settings, inv.pi_units);
    validate_config(cfg, inv.command);
  } catch (const std::invalid_argument& e) {
    report_error("config", e.what(), inv);
    return 2;
  }

  if (inv.dump) {
    std::cout << dump_config(cfg);
    return 0;
  }

  try {
    const fs::path dir(inv.out_dir);
    fs::create_directories(dir);
    json summary;
    if (inv.command == "simulate") summary = cmd_simulate(inv, cfg, dir);
    if (inv.command == "spectrum") summary = cmd_spectrum(inv, cfg, dir);
    if (inv.command == "rabi") summary = cmd_rabi(inv, cfg, dir);
    if (inv.command == "gap-scaling") summary = cmd_gap_scaling(inv, cfg, dir);
    if (inv.command == "analytic-check") summary = cmd_analytic_check(inv, cfg, dir);
    if (inv.command == "disorder") summary = cmd_disorder(inv, cfg, dir);
    summary["status"] = "ok";
    cli::write_json(dir / "summary.json", summary);
  } catch (const NumericalError& e) {
    report_error("numerical", e.what(), inv);
    return 3;
  } catch (const std::invalid_argument& e) {
    report_error("config", e.what(), inv);
    return 2;
  } catch (const std::exception& e) {
    report_error("io", e.what(), inv);
    return 1;
  }
  return 0;
}
