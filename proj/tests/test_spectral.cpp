#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qwalk/analytic.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

namespace {

double nearest(const std::vector<double>& values, double target) {
  double best = 1e300;
  for (double v : values) {
    const double d = std::abs(fold_angle(v - target));
    best = std::min(best, d);
  }
  return best;
}

double max_mismatch(std::vector<double> a, std::vector<double> mapped) {
  double worst = 0.0;
  for (double v : mapped) worst = std::max(worst, nearest(a, v));
  return worst;
}

}  // namespace

TEST_CASE("two-site pure shift is a permutation") {
  const auto field = CoinField::homogeneous(Geometry::cycle(2), CoinParams(0.0));
  const auto u = build_unitary(field);
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    int ones = 0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      if (u(r, c) == cplx(1.0)) ++ones;
      else CHECK(u(r, c) == cplx(0.0));
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("built unitary is unitary and agrees with one evolution step") {
  const Geometry g = Geometry::cycle(30, -15);
  const auto field = CoinField::interface(g, -0.6, 1.1, {0.3, -0.2, 0.8});
  const auto u = build_unitary(field);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  CHECK((u.adjoint() * u - id).cwiseAbs().maxCoeff() < 1e-13);

  std::mt19937_64 rng(21);
  std::normal_distribution<double> n;
  for (int k = 0; k < 10; ++k) {
    WalkerState s(g);
    for (Eigen::Index i = 0; i < s.vector().size(); ++i) s.vector()[i] = {n(rng), n(rng)};
    s.normalize();
    CHECK((u * s.vector() - evolve_state(s, field, 1).vector()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("homogeneous ring: bands bounded by cos omega = +-cos theta") {
  const auto field = CoinField::homogeneous(Geometry::cycle(42), CoinParams(0.25 * kPi));
  const auto res = diagonalize(field);
  REQUIRE(res.size() == 84);
  CHECK(res.max_residual() < 1e-10);
  double min_abs = kPi;
  double max_abs = 0.0;
  for (double w : res.quasienergies) {
    min_abs = std::min(min_abs, std::abs(w));
    max_abs = std::max(max_abs, std::abs(w));
  }
  CHECK(min_abs == doctest::Approx(0.25 * kPi).epsilon(1e-12));
  CHECK(max_abs == doctest::Approx(0.75 * kPi).epsilon(1e-12));
  CHECK(std::is_sorted(res.quasienergies.begin(), res.quasienergies.end()));
  CHECK(gap_state_filter(res, -0.5, 0.5).empty());
  CHECK(gap_state_filter(res, 2.6, -2.6).empty());
}

TEST_CASE("two-segment ring with a reflecting segment has two pairs at +-pi/2") {
  const auto field = CoinField::cycle_two_segment(42, 21, -0.5 * kPi, 0.25 * kPi, kCycleSweepPhases);
  const auto res = diagonalize(field);
  CHECK(res.max_residual() < 1e-10);
  CHECK(gap_state_filter(res, 0.5 * kPi - 0.3, 0.5 * kPi + 0.3).size() == 2);
  CHECK(gap_state_filter(res, -0.5 * kPi - 0.3, -0.5 * kPi + 0.3).size() == 2);
  CHECK(pair_splitting(res.quasienergies, 0.5 * kPi) < 1e-6);
  CHECK(pair_splitting(res.quasienergies, -0.5 * kPi) < 1e-6);
}

TEST_CASE("quasienergy multiset is closed under the quartet maps") {
  SUBCASE("real coins") {
    const auto w = quasienergies(CoinField::wire(21, 0.1 * kPi));
    std::vector<double> neg, shift;
    for (double v : w) {
      neg.push_back(-v);
      shift.push_back(v - kPi);
    }
    CHECK(max_mismatch(w, neg) < 1e-9);
    CHECK(max_mismatch(w, shift) < 1e-9);
  }
  SUBCASE("general phases: reflection about delta") {
    const CoinPhases ph{0.4, 0.3, 0.5};
    const auto w = quasienergies(CoinField::wire(21, 0.1 * kPi, -0.5 * kPi, -0.5 * kPi, ph));
    std::vector<double> mirror, shift;
    for (double v : w) {
      mirror.push_back(2.0 * ph.delta - v);
      shift.push_back(v - kPi);
    }
    CHECK(max_mismatch(w, mirror) < 1e-9);
    CHECK(max_mismatch(w, shift) < 1e-9);
  }
}

TEST_CASE("sweep at theta_A = theta_B reproduces the homogeneous ring") {
  SweepScenario sc;
  sc.phases = kCycleSweepPhases;
  const std::vector<double> grid{sc.theta_b};
  const auto pts = sweep_parameter(sc, grid);
  const auto ref = quasienergies(CoinField::homogeneous(Geometry::cycle(42), CoinParams(sc.theta_b, sc.phases)));
  REQUIRE(pts.size() == 1);
  REQUIRE(pts[0].quasienergies.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(pts[0].quasienergies[i] - ref[i]) < 1e-12);
}

TEST_CASE("sweep returns points in grid order") {
  SweepScenario sc;
  sc.phases = kCycleSweepPhases;
  const std::vector<double> grid{-0.5 * kPi, -0.4 * kPi, -0.3 * kPi};
  const auto pts = sweep_parameter(sc, grid, false);
  REQUIRE(pts.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(pts[i].theta_a == grid[i]);
    CHECK(pts[i].quasienergies.size() == 84);
    CHECK(pts[i].ipr.empty());
  }
}

TEST_CASE("localization fit on analytic interface states") {
  SUBCASE("theta = pi/4") {
    InterfaceStateSpec spec;
    spec.phases.sigma = kPi / 6.0;
    const auto st = interface_state(spec, 200);
    const auto fit = localization_length_fit(st.state, 0);
    CHECK(fit.exponential);
    CHECK(fit.xi() == doctest::Approx(1.1345926571065110).epsilon(0.05));
  }
  SUBCASE("small angle: xi close to 1/theta") {
    InterfaceStateSpec spec;
    spec.theta_minus = -kPi / 40.0;
    spec.theta_plus = kPi / 40.0;
    const auto st = interface_state(spec);
    const auto fit = localization_length_fit(st.state, 0);
    CHECK(fit.exponential);
    CHECK(fit.xi() == doctest::Approx(40.0 / kPi).epsilon(0.10));
  }
}

TEST_CASE("extended ring eigenvectors are flagged as non-exponential") {
  const auto res = diagonalize(CoinField::homogeneous(Geometry::cycle(42), CoinParams(0.25 * kPi)));
  const auto fit = localization_length_fit(res.eigenvectors[0], 0);
  CHECK_FALSE(fit.exponential);
  CHECK(std::abs(fit.slope) < 1e-3);
  CHECK_FALSE(res.xi[0].has_value());
}

TEST_CASE("wire gap eigenvectors have the analytic localization length") {
  // D = 41 >= 10 xi for theta = 3pi/10.
  const double theta = 0.3 * kPi;
  const auto res = diagonalize(CoinField::wire(41, theta));
  const auto gap = gap_state_filter(res, -0.3, 0.3);
  REQUIRE(gap.size() == 2);
  for (auto i : gap) {
    REQUIRE(res.xi[i].has_value());
    CHECK(*res.xi[i] == doctest::Approx(localization_length(theta)).epsilon(0.10));
  }
}

TEST_CASE("gap filter on the reflecting wire: a pair near 0 and a pair near pi") {
  const auto res = diagonalize(CoinField::wire(21, 0.1 * kPi));
  const auto zero = gap_state_filter(res, -0.3, 0.3);
  const auto pi = gap_state_filter(res, kPi - 0.3, -kPi + 0.3);
  REQUIRE(zero.size() == 2);
  REQUIRE(pi.size() == 2);
  const double w = std::abs(res.quasienergies[zero[0]]);
  CHECK(std::abs(res.quasienergies[zero[1]]) == doctest::Approx(w).epsilon(1e-9));
  for (auto i : pi) CHECK(std::abs(std::abs(res.quasienergies[i]) - (kPi - w)) < 1e-9);
}

TEST_CASE("in_window wraps through pi") {
  CHECK(in_window(0.1, -0.2, 0.2));
  CHECK_FALSE(in_window(0.3, -0.2, 0.2));
  CHECK(in_window(3.1, 3.0, -3.0));
  CHECK(in_window(-3.1, 3.0, -3.0));
  CHECK_FALSE(in_window(0.0, 3.0, -3.0));
}
