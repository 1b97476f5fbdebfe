#include <doctest.h>

#include <random>

#include "qwalk/spectral.hpp"
#include "qwalk/symmetry.hpp"

using namespace qwalk;

namespace {

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {d(rng), d(rng)};
  return v.normalized();
}

}  // namespace

TEST_CASE("names round-trip") {
  for (auto s : {Symmetry::Omega, Symmetry::OmegaPrime, Symmetry::Lambda, Symmetry::Pi, Symmetry::Gamma})
    CHECK(symmetry_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(symmetry_from_string("Theta"), std::invalid_argument);
}

TEST_CASE("every operator squares to the identity") {
  const CoinPhases ph{0.2, 0.3, 0.5};
  for (int size : {20, 21}) {
    const Geometry g = Geometry::wire(size);
    const auto v = random_vector(2 * size, 5);
    for (auto s : {Symmetry::Omega, Symmetry::OmegaPrime, Symmetry::Lambda, Symmetry::Pi, Symmetry::Gamma}) {
      CAPTURE(to_string(s));
      const auto op = make_symmetry(s, g, ph);
      CHECK((op.apply(op.apply(v)) - v).norm() < 1e-13);
      CHECK((op.square() - Eigen::MatrixXcd::Identity(2 * size, 2 * size)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("commutation relations on the real-coin wire") {
  const auto field = CoinField::wire(21, 0.1 * kPi);
  const auto u = build_unitary(field);
  const auto idx = physical_indices(field.geometry());
  CHECK(idx.size() == 40);
  const auto lam = make_symmetry(Symmetry::Lambda, field);
  const auto pi = make_symmetry(Symmetry::Pi, field);
  const auto gam = make_symmetry(Symmetry::Gamma, field);
  const auto om = make_symmetry(Symmetry::Omega, field);
  CHECK(max_deviation(lam.conjugate(u), -u, idx) < 1e-12);
  CHECK(max_deviation(pi.conjugate(u), u, idx) < 1e-12);
  CHECK(max_deviation(gam.conjugate(u), u.adjoint(), idx) < 1e-12);
  // Particle-hole: antiunitary and commuting with the real U.
  CHECK(om.antiunitary);
  CHECK(max_deviation(om.conjugate(u), u, idx) < 1e-12);
}

TEST_CASE("parity needs a mirror-symmetric field") {
  CHECK_THROWS_AS(make_symmetry(Symmetry::Pi, CoinField::wire(21, 0.3, -0.5 * kPi, 0.5 * kPi)),
                  std::invalid_argument);
}

TEST_CASE("state-level application matches the matrix form") {
  const Geometry g = Geometry::wire(9);
  WalkerState s(g, random_vector(18, 8));
  const CoinPhases ph{0.0, 0.3, 0.5};
  for (auto w : {Symmetry::Omega, Symmetry::OmegaPrime, Symmetry::Lambda, Symmetry::Pi, Symmetry::Gamma}) {
    const auto a = symmetry_apply(w, s, ph);
    CHECK((a.vector() - make_symmetry(w, g, ph).apply(s.vector())).norm() < 1e-15);
  }
}
