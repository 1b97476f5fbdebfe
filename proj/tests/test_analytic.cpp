#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qwalk/analytic.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/symmetry.hpp"

using namespace qwalk;

// Reference values below were computed independently (mpmath / numpy
// diagonalization) and frozen.

namespace {

double eig_residual(const CoinField& field, const WalkerState& v, double omega) {
  const Eigen::VectorXcd uv = build_unitary(field) * v.vector();
  return (uv - std::polar(1.0, -omega) * v.vector()).norm();
}

const double kOmegaPi10 = 1.0915463849394837e-3;

}  // namespace

TEST_CASE("decay rate and localization length") {
  CHECK(localization_length(0.25 * kPi) == doctest::Approx(1.1345926571065110).epsilon(1e-14));
  CHECK(decay_rate(0.1 * kPi) == doctest::Approx(0.31945825948088008).epsilon(1e-14));
  CHECK(localization_length(-0.25 * kPi) == doctest::Approx(1.1345926571065110).epsilon(1e-14));
}

TEST_CASE("interface state: norm, energy and eigen-residual") {
  for (double sigma : {0.0, kPi / 6.0}) {
    for (double eta : {0.0, kPi}) {
      InterfaceStateSpec spec;
      spec.phases.sigma = sigma;
      spec.eta = eta;
      const auto st = interface_state(spec, 200);
      CHECK(st.xi_plus == doctest::Approx(1.1345926571065110).epsilon(1e-14));
      CHECK(st.norm_constant == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
      CHECK(std::abs(fold_angle(st.omega - eta)) < 1e-15);
      CHECK(st.tail_mass < 1e-14);
      CHECK(st.state.is_normalized());
      const auto field = CoinField::interface(st.state.geometry(), spec.theta_minus, spec.theta_plus, spec.phases);
      CHECK(eig_residual(field, st.state, st.omega) < 1e-10);
      const cplx rq = st.state.vector().dot(build_unitary(field) * st.state.vector());
      CHECK(std::abs(fold_angle(-std::arg(rq) - st.omega)) < 1e-10);
    }
  }
}

TEST_CASE("interface states: asymmetric angles and general phases") {
  InterfaceStateSpec spec{-0.3, 0.7, {0.4, -0.9, 1.3}, kPi};
  const auto st = interface_state(spec);
  const auto field = CoinField::interface(st.state.geometry(), spec.theta_minus, spec.theta_plus, spec.phases);
  CHECK(eig_residual(field, st.state, st.omega) < 1e-10);
  CHECK(st.omega == doctest::Approx(fold_angle(0.4 + kPi)));
  CHECK_THROWS_AS(interface_state({0.3, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(interface_state(spec, 5), std::invalid_argument);
}

TEST_CASE("tail probability") {
  CHECK(tail_probability(-kPi / 40, kPi / 40, 0) == 1.0);
  CHECK(tail_probability(-kPi / 40, kPi / 40, 20) == doctest::Approx(0.043213918263772250).epsilon(1e-14));
  CHECK(tail_probability(-kPi / 40, kPi / 80, -20) == doctest::Approx(std::exp(-kPi)).epsilon(1e-14));
  CHECK(tail_probability(-kPi / 40, kPi / 80, 20) == doctest::Approx(std::exp(-0.5 * kPi)).epsilon(1e-14));
}

TEST_CASE("decomposition of the localized start") {
  InterfaceStateSpec spec;
  spec.phases.sigma = kPi / 6.0;
  auto s0 = interface_state(spec, 200);
  spec.eta = kPi;
  auto spi = interface_state(spec, 200);
  CHECK(std::abs(overlap(s0.state, spi.state)) < 1e-14);

  const auto start = WalkerState::localized(s0.state.geometry(), 0, 1.0 / std::sqrt(2.0), cplx(0.0, 1.0 / std::sqrt(2.0)));
  const auto d = decompose_initial(start, s0.state, spi.state);
  CHECK(d.symmetric);
  CHECK(std::abs(d.c_zero - d.c_pi) < 1e-12);
  CHECK(d.trapped_weight == doctest::Approx(2.0 * std::norm(d.c_pi)));
  CHECK(d.trapped_weight + d.band_weight == doctest::Approx(1.0).epsilon(1e-15));

  // Degenerate input: the eta = 0 state itself.
  const auto self = decompose_initial(s0.state, s0.state, spi.state);
  CHECK_FALSE(self.symmetric);
  CHECK(std::abs(self.c_zero - 1.0) < 1e-14);
  CHECK(std::abs(self.c_pi) < 1e-14);
}

TEST_CASE("gap root against frozen references") {
  const auto odd = solve_gap(0.1 * kPi, 9, 1);
  CHECK(odd.omega == doctest::Approx(kOmegaPi10).epsilon(1e-12));
  CHECK(odd.k0 == doctest::Approx(0.31945825948088008).epsilon(1e-14));
  CHECK(std::abs(std::cosh(odd.k) - std::cos(odd.omega) / std::cos(odd.theta)) < 1e-12);
  CHECK(odd.mu * odd.z == -1);

  const auto even = solve_gap(0.1 * kPi, 9, 2);
  CHECK(even.omega == doctest::Approx(1.5024267155651951e-3).epsilon(1e-12));

  const auto deep = solve_gap(0.4 * kPi, 14, 1);
  CHECK(deep.omega == doctest::Approx(6.0343345725193165e-24).epsilon(1e-10));
}

TEST_CASE("approximate gap energy") {
  const double w0 = approx_gap_energy(0.1 * kPi, 9, 1);
  CHECK(w0 == doctest::Approx(1.0915078121321556e-3).epsilon(1e-13));
  const double k0 = decay_rate(0.1 * kPi);
  CHECK(w0 == doctest::Approx(std::sin(0.2 * kPi) / std::pow(1.0 + std::sin(0.1 * kPi), 2) * std::exp(-18.0 * k0)));
  double prev = 1.0;
  for (int L = 1; L <= 20; ++L) {
    const double w = approx_gap_energy(0.1 * kPi, L, 1);
    CHECK(w < prev);
    prev = w;
    if (L >= 5) {
      const double r = solve_gap(0.1 * kPi, L, 1).omega / w;
      CHECK(r > 0.9);
      CHECK(r < 1.1);
    }
  }
}

TEST_CASE("gap root decays by e^{-2 k0} per unit length") {
  const double theta = kPi / 6.0;
  const double ratio = solve_gap(theta, 14, 1).omega / solve_gap(theta, 13, 1).omega;
  CHECK(ratio == doctest::Approx(std::exp(-2.0 * decay_rate(theta))).epsilon(1e-3));
}

TEST_CASE("gap eigenvector: residual, bi-localization and parity") {
  const auto sol = solve_gap(0.1 * kPi, 9, 1);
  const auto field = CoinField::wire(21, 0.1 * kPi);
  const auto v = gap_eigenvector(sol);
  CHECK(v.is_normalized());
  CHECK(eig_residual(field, v, sol.omega) < 1e-10);

  const auto p = v.site_probabilities();
  const auto pmax = *std::max_element(p.begin(), p.end());
  CHECK(p[1] == doctest::Approx(pmax));
  CHECK(p[19] == doctest::Approx(pmax));
  CHECK(std::min_element(p.begin() + 1, p.end() - 1) - p.begin() == 10);
  // Independent diagonalization gives 6.342890969e-3 for this ratio.
  CHECK(p[10] / pmax == doctest::Approx(6.342890969323e-3).epsilon(1e-9));

  const auto pi = make_symmetry(Symmetry::Pi, field);
  CHECK((pi.apply(v.vector()) - double(sol.mu) * v.vector()).norm() < 1e-12);
}

TEST_CASE("gap quartet for general coin phases") {
  const CoinPhases ph{0.0, 0.3, 0.5};
  const auto field = CoinField::wire(21, 0.1 * kPi, -0.5 * kPi, -0.5 * kPi, ph);
  const auto sol = solve_gap(0.1 * kPi, 9, 1);
  const auto q = gap_quartet(gap_eigenvector(sol, ph), sol.omega, field);
  REQUIRE(q.size() == 4);
  const double w = sol.omega;
  const double expect[4] = {w, -w, fold_angle(w - kPi), fold_angle(kPi - w)};
  for (int i = 0; i < 4; ++i) {
    CHECK(q[i].omega == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK(q[i].residual < 1e-10);
    CHECK(eig_residual(field, q[i].state, q[i].omega) < 1e-10);
  }
  const auto p0 = q[0].state.site_probabilities();
  for (int i = 0; i < 4; ++i) {
    const auto pi = q[i].state.site_probabilities();
    for (std::size_t x = 0; x < p0.size(); ++x) CHECK(std::abs(pi[x] - p0[x]) < 1e-14);
    for (int j = i + 1; j < 4; ++j) CHECK(std::abs(overlap(q[i].state, q[j].state)) < 1e-10);
  }
}

TEST_CASE("band roots and eigenvectors") {
  const auto band = solve_band(0.1 * kPi, 9, 1);
  CHECK(band.size() == 18);
  std::vector<double> ws;
  for (const auto& b : band) ws.push_back(b.omega);
  std::sort(ws.begin(), ws.end());
  CHECK(ws[0] == doctest::Approx(0.36263300100717827).epsilon(1e-12));
  CHECK(ws[1] == doctest::Approx(0.471926300473709).epsilon(1e-12));
  CHECK(ws[2] == doctest::Approx(0.6044149938453078).epsilon(1e-12));

  const auto field = CoinField::wire(21, 0.1 * kPi);
  for (const auto& b : band) {
    CHECK(b.residual < 1e-12);
    CHECK(eig_residual(field, band_eigenvector(b), b.omega) < 1e-9);
  }
}

TEST_CASE("analytic spectrum matches diagonalization for odd and even wires") {
  for (int size : {8, 9, 20, 21}) {
    for (CoinPhases ph : {CoinPhases{}, CoinPhases{0.0, 0.3, 0.5}}) {
      CAPTURE(size);
      const double theta = 0.1 * kPi;
      const auto an = analytic_spectrum(theta, size, ph);
      const auto num = quasienergies(CoinField::wire(size, theta, -0.5 * kPi, -0.5 * kPi, ph));
      REQUIRE(an.all.size() == static_cast<std::size_t>(2 * size));
      REQUIRE(num.size() == an.all.size());
      CHECK(an.gap_energies.size() == 4);
      CHECK(an.seam_energies.size() == 2);
      CHECK(an.band_energies.size() == static_cast<std::size_t>(2 * (size - 3)));
      for (std::size_t i = 0; i < num.size(); ++i) CHECK(std::abs(an.all[i] - num[i]) < 1e-9);
    }
  }
}

TEST_CASE("seam block of the reflecting wire") {
  const auto seam = seam_quasienergies(CoinField::wire(21, 0.1 * kPi));
  REQUIRE(seam.size() == 2);
  CHECK(std::abs(std::abs(seam[0]) - 0.5 * kPi) < 1e-15);
  CHECK(std::abs(seam[0] + seam[1]) < 1e-15);
}

TEST_CASE("Rabi splitting prediction") {
  const auto r = rabi_gap_prediction(0.1 * kPi, 21);
  CHECK(r.delta_omega == doctest::Approx(2.0 * kOmegaPi10).epsilon(1e-12));
  CHECK(r.period == doctest::Approx(2.0 * kPi / r.delta_omega));
  CHECK(r.period > 2.8e3);
  CHECK(r.period < 3.0e3);
  CHECK(r.approx_delta_omega == doctest::Approx(2.0 * 1.0915078121321556e-3).epsilon(1e-12));
  const double ratio = rabi_gap_prediction(0.1 * kPi, 23).delta_omega / r.delta_omega;
  CHECK(ratio == doctest::Approx(std::exp(-2.0 * decay_rate(0.1 * kPi))).epsilon(1e-3));
  CHECK(rabi_gap_prediction(0.1 * kPi, 20).delta_omega == doctest::Approx(2.0 * 1.5024267155651951e-3).epsilon(1e-12));
}
