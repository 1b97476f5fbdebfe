#include "qwalk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qwalk/errors.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> coordinates(const Geometry& g) {
  std::vector<int> xs(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) xs[static_cast<std::size_t>(i)] = g.coordinate(i);
  return xs;
}

double slope_fit(const std::vector<double>& r, const std::vector<double>& y) {
  const double n = static_cast<double>(r.size());
  const double mr = std::accumulate(r.begin(), r.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    sxy += (r[i] - mr) * (y[i] - my);
    sxx += (r[i] - mr) * (r[i] - mr);
  }
  return sxy / sxx;
}

}  // namespace

double lag_autocorrelation(std::span<const double> series, int lag) {
  if (lag <= 0 || static_cast<std::size_t>(lag) + 2 > series.size()) {
    throw std::invalid_argument("series too short for the requested lag");
  }
  const std::size_t n = series.size() - static_cast<std::size_t>(lag);
  auto head = series.first(n);
  auto tail = series.subspan(static_cast<std::size_t>(lag));
  const double mh = std::accumulate(head.begin(), head.end(), 0.0) / static_cast<double>(n);
  const double mt = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(n);
  double sht = 0.0;
  double shh = 0.0;
  double stt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sht += (head[i] - mh) * (tail[i] - mt);
    shh += (head[i] - mh) * (head[i] - mh);
    stt += (tail[i] - mt) * (tail[i] - mt);
  }
  return sht / std::sqrt(shh * stt);
}

double side_log_slope(std::span<const int> xs, std::span<const double> p, int side, int r_lo, int r_hi,
                      int parity) {
  std::vector<double> r;
  std::vector<double> y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int x = xs[i];
    if (side * x < r_lo || side * x > r_hi) continue;
    if (((x % 2) + 2) % 2 != parity || !(p[i] > 0.0)) continue;
    r.push_back(std::abs(x));
    y.push_back(std::log(p[i]));
  }
  if (r.size() < 2) throw std::invalid_argument("fewer than 2 sites in the tail fit range");
  return slope_fit(r, y);
}

InterfaceEvolution run_interface_evolution(double theta_minus, double theta_plus, const CoinPhases& phases,
                                           int steps, const InterfaceEvolutionOptions& options) {
  InterfaceEvolution out;
  out.theta_minus = theta_minus;
  out.theta_plus = theta_plus;
  out.steps = steps;
  out.geometry = Geometry::truncated_line(steps, std::abs(options.initial.x));
  out.xs = coordinates(out.geometry);
  const CoinField field = CoinField::interface(out.geometry, theta_minus, theta_plus, phases);
  const WalkerState start =
      WalkerState::localized(out.geometry, options.initial.x, options.initial.a, options.initial.b);

  const double xi = std::max(localization_length(std::abs(theta_minus)), localization_length(std::abs(theta_plus)));
  out.central_radius = options.central_window_xi * xi;
  out.central_probability.reserve(static_cast<std::size_t>(steps) + 1);
  const WalkerState final_state = evolve_observed(start, field, steps, [&](int, const WalkerState& s) {
    const auto p = s.site_probabilities();
    if (options.record_trajectory) out.trajectory.push_back(p);
    double central = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      total += p[i];
      if (std::abs(out.xs[i]) <= out.central_radius) central += p[i];
    }
    out.central_probability.push_back(central);
    out.max_norm_deviation = std::max(out.max_norm_deviation, std::abs(total - 1.0));
  });
  out.final_distribution = final_state.site_probabilities();
  out.tail_overlay.reserve(out.xs.size());
  for (int x : out.xs) out.tail_overlay.push_back(tail_probability(theta_minus, theta_plus, x));
  return out;
}

double DefectRun::p_at(int x) const {
  const auto it = std::find(xs.begin(), xs.end(), x);
  if (it == xs.end()) throw std::out_of_range("site not in the run");
  return final_distribution[static_cast<std::size_t>(it - xs.begin())];
}

std::vector<DefectRun> run_defect_scan(double theta_b, std::span<const double> theta_as, int steps,
                                       const CoinPhases& phases, const SiteSpinor& initial) {
  const Geometry g = Geometry::truncated_line(steps, std::abs(initial.x));
  std::vector<DefectRun> out(theta_as.size());
  parallel_for(theta_as.size(), [&](std::size_t i) {
    const CoinField field = CoinField::defect(g, theta_as[i], theta_b, phases);
    const WalkerState start = WalkerState::localized(g, initial.x, initial.a, initial.b);
    out[i].theta_a = theta_as[i];
    out[i].xs = coordinates(g);
    out[i].final_distribution = evolve_state(start, field, steps).site_probabilities();
  });
  return out;
}

std::vector<SweepPoint> run_cycle_spectrum(int size, int segment, double theta_b, const CoinPhases& phases,
                                           std::span<const double> theta_as, bool with_ipr) {
  SweepScenario scenario;
  scenario.kind = Scenario::CycleTwoSegment;
  scenario.size = size;
  scenario.segment = segment;
  scenario.theta_b = theta_b;
  scenario.phases = phases;
  return sweep_parameter(scenario, theta_as, with_ipr);
}

WireDynamics run_wire_dynamics(const WireDynamicsConfig& config) {
  const CoinField field =
      CoinField::wire(config.size, config.theta, config.left_end, config.right_end, config.phases);
  WireDynamics out;
  out.geometry = field.geometry();
  out.xs = coordinates(out.geometry);
  const SiteSpinor init = config.initial.value_or(SiteSpinor{out.geometry.x_min() + 1, 1.0, 0.0});
  const WalkerState start = WalkerState::localized(out.geometry, init.x, init.a, init.b);
  EvolveOptions opts;
  opts.record_trajectory = true;
  out.trajectory = evolve(start, field, config.steps, opts).trajectory;
  return out;
}

std::optional<GapPair> find_gap_pair(const SpectralResult& result, double delta, double window,
                                     double isolation) {
  if (result.size() < 3) return std::nullopt;
  std::vector<std::size_t> order(result.size());
  std::iota(order.begin(), order.end(), 0);
  auto dist = [&](std::size_t j) { return std::abs(fold_angle(result.quasienergies[j] - delta)); };
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](std::size_t l, std::size_t r) { return dist(l) < dist(r); });
  const double d1 = dist(order[1]);
  const double d2 = dist(order[2]);
  if (d1 > window || d2 < isolation * d1) return std::nullopt;
  std::size_t plus = order[0];
  std::size_t minus = order[1];
  if (fold_angle(result.quasienergies[plus] - delta) < fold_angle(result.quasienergies[minus] - delta)) {
    std::swap(plus, minus);
  }
  return GapPair{plus, minus};
}

std::pair<WalkerState, WalkerState> left_right_states(const WalkerState& plus, const WalkerState& minus) {
  if (!(plus.geometry() == minus.geometry())) throw GeometryMismatch();
  const Eigen::Index left = 2 * (plus.size() / 2);
  // With x = e^{i alpha} Psi_w and y = e^{-i alpha} Psi_{-w}, the left-half weight of
  // (x + y)/sqrt(2) is maximal when <P y|P x> is real and positive.
  const cplx ov = minus.vector().head(left).dot(plus.vector().head(left));
  const double alpha = -0.5 * std::arg(ov);
  const Eigen::VectorXcd x = std::polar(1.0, alpha) * plus.vector();
  const Eigen::VectorXcd y = std::polar(1.0, -alpha) * minus.vector();
  const double r = 1.0 / std::sqrt(2.0);
  return {WalkerState(plus.geometry(), r * (x + y)), WalkerState(plus.geometry(), r * (x - y))};
}

double estimate_period(std::span<const double> p_L, std::span<const double> p_R) {
  const std::size_t n = std::min(p_L.size(), p_R.size());
  std::size_t half = 0;
  while (half < n && !(p_L[half] < p_R[half])) ++half;
  if (half >= n) return kNaN;
  // First return lobe: from the crossing back above p_R until it drops below again.
  std::size_t back = half;
  while (back < n && p_L[back] < p_R[back]) ++back;
  if (back >= n) return kNaN;
  std::size_t peak = back;
  for (std::size_t t = back; t < n && !(p_L[t] < p_R[t]); ++t) {
    if (p_L[t] > p_L[peak]) peak = t;
  }
  if (peak == 0 || peak + 1 >= n) return kNaN;  // still rising at the end of the record
  const double ym = p_L[peak - 1];
  const double y0 = p_L[peak];
  const double yp = p_L[peak + 1];
  const double denom = ym - 2.0 * y0 + yp;
  const double offset = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
  return static_cast<double>(peak) + offset;
}

RabiAnalysis run_rabi_transport(const CoinField& wire, const RabiOptions& options) {
  const Geometry& g = wire.geometry();
  if (!wire.uniform_phases()) throw std::invalid_argument("Rabi analysis needs uniform coin phases");
  const double delta = wire.coin(0).delta();
  DiagonalizeOptions dopts;
  dopts.fit_localization = false;
  const SpectralResult spec = diagonalize(wire, dopts);
  const auto pair = find_gap_pair(spec, delta, options.window, options.isolation);
  if (!pair) throw NumericalError("no isolated gap pair near omega = delta");

  const auto& plus = spec.eigenvectors[pair->plus];
  const auto& minus = spec.eigenvectors[pair->minus];
  auto [psi_l, psi_r] = left_right_states(plus, minus);

  RabiAnalysis out{psi_l, psi_r, {}, 0, 0, {}, {}, 0, 0, 0, 0, 0, 0};
  out.omega_pair = {spec.quasienergies[pair->plus], spec.quasienergies[pair->minus]};
  out.delta_omega = fold_angle(out.omega_pair.first - out.omega_pair.second);
  out.predicted_period = 2.0 * kPi / out.delta_omega;
  out.orthogonality = std::abs(overlap(psi_l, psi_r));
  out.steps = options.steps.value_or(static_cast<int>(std::ceil(1.5 * out.predicted_period)));

  const WalkerState start = options.initial.value_or(psi_l);
  const int center = g.size() / 2;
  out.confinement = std::numeric_limits<double>::infinity();
  out.p_L.reserve(static_cast<std::size_t>(out.steps) + 1);
  out.p_R.reserve(static_cast<std::size_t>(out.steps) + 1);
  evolve_observed(start, wire, out.steps, [&](int, const WalkerState& s) {
    const double pl = std::norm(overlap(s, out.psi_L));
    const double pr = std::norm(overlap(s, out.psi_R));
    out.p_L.push_back(pl);
    out.p_R.push_back(pr);
    out.confinement = std::min(out.confinement, pl + pr);
    const auto p = s.site_probabilities();
    const double pc = p[static_cast<std::size_t>(center)];
    out.max_center_probability = std::max(out.max_center_probability, pc);
    out.max_center_ratio = std::max(out.max_center_ratio, pc / *std::max_element(p.begin(), p.end()));
  });
  out.period_estimate = estimate_period(out.p_L, out.p_R);
  if (!options.record_series) {
    out.p_L.clear();
    out.p_R.clear();
  }
  return out;
}

RabiAnalysis run_rabi_transport(int size, double theta, const CoinPhases& phases, std::optional<int> steps) {
  RabiOptions opts;
  opts.steps = steps;
  return run_rabi_transport(CoinField::wire(size, theta, -0.5 * kPi, -0.5 * kPi, phases), opts);
}

DisorderRealization run_disorder_rabi(const DisorderConfig& config) {
  if (!(config.theta_lo >= 0.0 && config.theta_hi <= 0.5 * kPi && config.theta_lo <= config.theta_hi)) {
    throw std::invalid_argument("disorder range must lie in [0, pi/2] so the bulk stays in one phase");
  }
  const CoinField field =
      CoinField::random_bulk_wire(config.size, config.theta_lo, config.theta_hi, config.seed);
  DisorderRealization out;
  out.seed = config.seed;
  for (const auto& c : field.coins()) out.thetas.push_back(c.theta());

  RabiOptions opts;
  opts.record_series = false;
  const Geometry& g = field.geometry();
  if (config.initial == DisorderInitial::LeftSite) {
    opts.initial = WalkerState::localized(g, g.x_min() + 1, 1.0, 0.0);
  } else {
    const double mid = 0.5 * (config.theta_lo + config.theta_hi);
    const CoinField clean = CoinField::wire(config.size, mid);
    DiagonalizeOptions dopts;
    dopts.fit_localization = false;
    const auto spec = diagonalize(clean, dopts);
    const auto pair = find_gap_pair(spec, 0.0, opts.window, opts.isolation);
    if (!pair) throw NumericalError("clean reference wire has no gap pair");
    opts.initial = left_right_states(spec.eigenvectors[pair->plus], spec.eigenvectors[pair->minus]).first;
  }
  try {
    // Size the run from the disordered pair itself, capped at max_steps.
    DiagonalizeOptions dopts;
    dopts.fit_localization = false;
    const auto spec = diagonalize(field, dopts);
    const auto pair = find_gap_pair(spec, 0.0, opts.window, opts.isolation);
    if (!pair) throw NumericalError("no isolated gap pair near omega = 0");
    const double dw = spec.quasienergies[pair->plus] - spec.quasienergies[pair->minus];
    const int natural = static_cast<int>(std::ceil(1.5 * 2.0 * kPi / dw));
    opts.steps = config.steps.value_or(std::min(natural, config.max_steps));
    out.analysis = run_rabi_transport(field, opts);
  } catch (const NumericalError& e) {
    out.failure = e.what();
  }
  return out;
}

std::vector<DisorderRealization> run_disorder_batch(const DisorderConfig& base, int count) {
  if (count < 0) throw std::invalid_argument("negative realization count");
  std::vector<DisorderRealization> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t i) {
    DisorderConfig cfg = base;
    cfg.seed = base.seed + i;
    out[i] = run_disorder_rabi(cfg);
  });
  return out;
}

std::vector<GapScalingRow> run_gap_scaling(std::span<const double> thetas, int l_min, int l_max, int zeta_size,
                                           bool diagonalize_wire) {
  if (l_min < 1 || l_max < l_min) throw std::invalid_argument("invalid L range");
  std::vector<GapScalingRow> rows;
  for (double theta : thetas) {
    for (int L = l_min; L <= l_max; ++L) rows.push_back({theta, L, 0.0, 0.0, kNaN});
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    row.omega_exact = solve_gap(row.theta, row.L, zeta_size).omega;
    row.omega_approx = approx_gap_energy(row.theta, row.L, zeta_size);
    if (diagonalize_wire) {
      const WireShape shape{row.L, zeta_size};
      const auto w = quasienergies(CoinField::wire(shape.size(), row.theta));
      double best = std::numeric_limits<double>::infinity();
      for (double v : w) best = std::min(best, std::abs(v));
      row.omega_numeric = best;
    }
  });
  return rows;
}

std::vector<GapScalingFit> fit_gap_scaling(std::span<const GapScalingRow> rows, int approx_from) {
  std::vector<GapScalingFit> fits;
  std::vector<double> seen;
  for (const auto& row : rows) {
    if (std::find(seen.begin(), seen.end(), row.theta) != seen.end()) continue;
    seen.push_back(row.theta);
    std::vector<double> ls;
    std::vector<double> lw;
    GapScalingFit fit;
    fit.theta = row.theta;
    fit.expected_slope = -2.0 * decay_rate(row.theta);
    for (const auto& r : rows) {
      if (r.theta != row.theta) continue;
      ls.push_back(r.L);
      lw.push_back(std::log(r.omega_exact));
      if (r.L >= approx_from) {
        fit.max_approx_deviation = std::max(fit.max_approx_deviation, std::abs(r.omega_approx / r.omega_exact - 1.0));
      }
    }
    if (ls.size() < 2) throw std::invalid_argument("need at least two L values per theta");
    fit.slope = slope_fit(ls, lw);
    fits.push_back(fit);
  }
  return fits;
}

}  // namespace qwalk
