#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"

using namespace qwalk;

namespace {

const CoinPhases kTrapPhases{0.0, 0.0, kPi / 6.0};

double window_weight(const std::vector<int>& xs, const std::vector<double>& p, int radius) {
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i]) <= radius) s += p[i];
  return s;
}

}  // namespace

TEST_CASE("lag autocorrelation") {
  std::vector<double> alt;
  for (int i = 0; i < 40; ++i) alt.push_back(i % 2 ? 1.0 : 3.0);
  CHECK(lag_autocorrelation(alt, 2) == doctest::Approx(1.0));
  CHECK(lag_autocorrelation(alt, 1) == doctest::Approx(-1.0));
}

TEST_CASE("interface evolution: parity, norm and trapping") {
  const auto run = run_interface_evolution(-0.25 * kPi, 0.25 * kPi, kTrapPhases, 150);
  CHECK(run.max_norm_deviation < 1e-12);
  REQUIRE(run.trajectory.size() == 151);
  for (std::size_t i = 0; i < run.xs.size(); ++i)
    if (run.xs[i] % 2 != 0) CHECK(run.final_distribution[i] == 0.0);
  CHECK(run.central_radius == doctest::Approx(3.0 * 1.1345926571065110));
  CHECK(run.central_probability[150] == doctest::Approx(0.5579401846674011).epsilon(1e-10));
  // The walker is not pushed off by the interface: the maximum stays at x = 0.
  const auto peak = std::max_element(run.final_distribution.begin(), run.final_distribution.end());
  CHECK(run.xs[static_cast<std::size_t>(peak - run.final_distribution.begin())] == 0);

  // Long-time central weight against the two analytic interface states.
  InterfaceStateSpec spec;
  spec.phases = kTrapPhases;
  const auto s0 = interface_state(spec, 200);
  spec.eta = kPi;
  const auto spi = interface_state(spec, 200);
  const auto d = decompose_initial(WalkerState::localized(s0.state.geometry(), 0, SiteSpinor{}.a, SiteSpinor{}.b),
                                   s0.state, spi.state);
  const double avg = std::accumulate(run.central_probability.begin() + 50, run.central_probability.end(), 0.0) / 101.0;
  CHECK(avg == doctest::Approx(d.trapped_weight).epsilon(0.02));
}

TEST_CASE("homogeneous walk has no central peak") {
  const auto trap = run_interface_evolution(-0.25 * kPi, 0.25 * kPi, kTrapPhases, 150);
  const Geometry g = Geometry::truncated_line(150);
  const auto field = CoinField::homogeneous(g, CoinParams(0.25 * kPi, kTrapPhases));
  const auto st = evolve_state(WalkerState::localized(g, 0, SiteSpinor{}.a, SiteSpinor{}.b), field, 150);
  std::vector<int> xs;
  for (int i = 0; i < g.size(); ++i) xs.push_back(g.coordinate(i));
  const auto p = st.site_probabilities();
  const double central = window_weight(xs, p, 3);
  // Frozen from an independent dense-matrix run.
  CHECK(central == doctest::Approx(0.012820517932936003).epsilon(1e-10));
  CHECK(central < 0.05 * trap.central_probability[150]);
  const auto peak = std::max_element(p.begin(), p.end()) - p.begin();
  CHECK(std::abs(g.coordinate(static_cast<int>(peak))) > 90);
}

TEST_CASE("defect scan: localization and anti-localization") {
  const std::vector<double> as{-kPi / 3.0, kPi / 3.0, 0.25 * kPi};
  const auto runs = run_defect_scan(0.25 * kPi, as, 150);
  REQUIRE(runs.size() == 3);
  const auto& loc = runs[0];
  CHECK(loc.p_at(0) > loc.p_at(2));
  CHECK(loc.p_at(0) > loc.p_at(-2));
  const auto& anti = runs[1];
  CHECK(anti.p_at(0) < 0.5 * (anti.p_at(2) + anti.p_at(-2)));

  const Geometry g = Geometry::truncated_line(150, 0);
  const auto hom = evolve_state(WalkerState::localized(g, 0, SiteSpinor{}.a, SiteSpinor{}.b),
                                CoinField::homogeneous(g, CoinParams(0.25 * kPi)), 150)
                       .site_probabilities();
  for (int x = -150; x <= 150; x += 2) CHECK(runs[2].p_at(x) == doctest::Approx(hom[static_cast<std::size_t>(g.index(x))]).epsilon(1e-13));
}

TEST_CASE("wire dynamics: ping-pong against edge trapping") {
  auto edge_weight = [](const WireDynamics& r, int t) { return r.trajectory[t][1] + r.trajectory[t][2]; };
  WireDynamicsConfig cfg;
  cfg.steps = 400;
  const auto pingpong = run_wire_dynamics(cfg);
  cfg.left_end = -0.5 * kPi;
  const auto trapped = run_wire_dynamics(cfg);

  double mean_pp = 0.0, mean_tr = 0.0;
  for (int t = 100; t <= 400; ++t) {
    mean_pp += edge_weight(pingpong, t);
    mean_tr += edge_weight(trapped, t);
  }
  CHECK(mean_tr > 2.5 * mean_pp);

  // Ballistic return to the left end: about 2(D - 2) steps at group velocity
  // just under one site per step. Measured: 42 and 86.
  int first = 20;
  for (int t = 20; t <= 60; ++t)
    if (pingpong.trajectory[t][1] > pingpong.trajectory[first][1]) first = t;
  int second = 64;
  for (int t = 64; t <= 110; ++t)
    if (pingpong.trajectory[t][1] > pingpong.trajectory[second][1]) second = t;
  CHECK(first == 42);
  CHECK(second == 86);
  CHECK(first > 2 * (21 - 2));
  CHECK(double(first) / (2 * (21 - 2)) < 1.2);
}

TEST_CASE("clean Rabi transport") {
  const auto r = run_rabi_transport(21, 0.1 * kPi);
  CHECK(r.delta_omega == doctest::Approx(2.0 * 1.0915463849394837e-3).epsilon(1e-9));
  CHECK(r.confinement > 1.0 - 1e-10);
  CHECK(r.orthogonality < 1e-12);
  CHECK(r.period_estimate == doctest::Approx(r.predicted_period).epsilon(0.01));
  CHECK(r.p_L.front() == doctest::Approx(1.0));
  CHECK(r.p_R.front() < 1e-12);
  CHECK(r.steps == static_cast<int>(std::ceil(1.5 * r.predicted_period)));
  // Middle site relative to the largest site. Independent value 6.34e-3.
  CHECK(r.max_center_ratio < 7e-3);
}

TEST_CASE("Rabi pair detection needs an isolated pair") {
  const auto res = diagonalize(CoinField::homogeneous(Geometry::cycle(42), CoinParams(0.25 * kPi)));
  CHECK_FALSE(find_gap_pair(res, 0.0, 0.3, 10.0).has_value());
  CHECK_THROWS_AS(run_rabi_transport(CoinField::homogeneous(Geometry::cycle(21), CoinParams(0.3))), NumericalError);
}

TEST_CASE("period estimate from synthetic populations") {
  std::vector<double> pl, pr;
  const double period = 123.4;
  for (int t = 0; t < 300; ++t) {
    const double c = std::cos(kPi * t / period);
    pl.push_back(c * c);
    pr.push_back(1.0 - c * c);
  }
  CHECK(estimate_period(pl, pr) == doctest::Approx(period).epsilon(1e-3));
  CHECK(std::isnan(estimate_period(std::span(pl).first(80), std::span(pr).first(80))));
}

TEST_CASE("disorder: zero-width draw equals the clean run, seeds are reproducible") {
  DisorderConfig cfg;
  cfg.theta_lo = 0.1 * kPi;
  cfg.theta_hi = 0.1 * kPi;
  cfg.initial = DisorderInitial::CleanPsiL;
  const auto flat = run_disorder_rabi(cfg);
  REQUIRE(flat.analysis.has_value());
  const auto clean = run_rabi_transport(21, 0.1 * kPi);
  CHECK(flat.analysis->delta_omega == clean.delta_omega);
  CHECK(flat.analysis->steps == clean.steps);
  CHECK(flat.analysis->confinement == clean.confinement);
  CHECK(flat.analysis->period_estimate == clean.period_estimate);

  DisorderConfig rnd;
  rnd.initial = DisorderInitial::CleanPsiL;
  rnd.seed = 1000;
  const auto batch = run_disorder_batch(rnd, 4);
  REQUIRE(batch.size() == 4);
  const auto again = run_disorder_rabi(rnd);
  CHECK(again.thetas == batch[0].thetas);
  REQUIRE(again.analysis.has_value());
  CHECK(again.analysis->confinement == batch[0].analysis->confinement);
  CHECK(again.analysis->period_estimate == batch[0].analysis->period_estimate);
  CHECK(batch[1].seed == 1001);
  CHECK(batch[0].thetas.front() == doctest::Approx(-0.5 * kPi));
  CHECK(batch[0].thetas.back() == doctest::Approx(-0.5 * kPi));
  std::vector<double> periods;
  for (const auto& b : batch) {
    REQUIRE(b.analysis.has_value());
    periods.push_back(b.analysis->predicted_period);
  }
  CHECK(*std::max_element(periods.begin(), periods.end()) > *std::min_element(periods.begin(), periods.end()));
}

TEST_CASE("gap scaling table") {
  const std::vector<double> thetas{0.05 * kPi, 0.25 * kPi, 0.4 * kPi};
  const auto rows = run_gap_scaling(thetas, 4, 8);
  REQUIRE(rows.size() == 15);
  for (const auto& r : rows) {
    if (r.omega_exact > 1e-12) CHECK(std::abs(r.omega_numeric - r.omega_exact) < 1e-9);
  }
  // Smaller angle means slower decay, so its curve lies highest.
  for (int L = 0; L < 5; ++L) {
    CHECK(rows[static_cast<std::size_t>(L)].omega_exact > rows[static_cast<std::size_t>(5 + L)].omega_exact);
    CHECK(rows[static_cast<std::size_t>(5 + L)].omega_exact > rows[static_cast<std::size_t>(10 + L)].omega_exact);
  }
  const auto fits = fit_gap_scaling(rows);
  REQUIRE(fits.size() == 3);
  CHECK(fits[1].slope == doctest::Approx(fits[1].expected_slope).epsilon(0.02));
}
