#include "qwalk/symmetry.hpp"

#include <stdexcept>
#include <string>

namespace qwalk {

std::string_view to_string(Symmetry which) {
  switch (which) {
    case Symmetry::Omega: return "Omega";
    case Symmetry::OmegaPrime: return "OmegaPrime";
    case Symmetry::Lambda: return "Lambda";
    case Symmetry::Pi: return "Pi";
    case Symmetry::Gamma: return "Gamma";
  }
  return "?";
}

Symmetry symmetry_from_string(std::string_view name) {
  for (Symmetry s : {Symmetry::Omega, Symmetry::OmegaPrime, Symmetry::Lambda, Symmetry::Pi, Symmetry::Gamma}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown symmetry '" + std::string(name) + "'");
}

Eigen::VectorXcd SymmetryOperator::apply(const Eigen::VectorXcd& v) const {
  return antiunitary ? Eigen::VectorXcd(matrix * v.conjugate()) : Eigen::VectorXcd(matrix * v);
}

Eigen::MatrixXcd SymmetryOperator::conjugate(const Eigen::MatrixXcd& a) const {
  // (M K) A (M K)^{-1} = M conj(A) M^dagger
  return antiunitary ? Eigen::MatrixXcd(matrix * a.conjugate() * matrix.adjoint())
                     : Eigen::MatrixXcd(matrix * a * matrix.adjoint());
}

Eigen::MatrixXcd SymmetryOperator::square() const {
  return antiunitary ? Eigen::MatrixXcd(matrix * matrix.conjugate()) : Eigen::MatrixXcd(matrix * matrix);
}

SymmetryOperator make_symmetry(Symmetry which, const Geometry& geometry, const CoinPhases& phases) {
  const int n = geometry.size();
  const Eigen::Index dim = 2 * n;
  SymmetryOperator op{which, Eigen::MatrixXcd::Zero(dim, dim), false};
  auto& m = op.matrix;
  switch (which) {
    case Symmetry::Omega:
      m.setIdentity();
      op.antiunitary = true;
      break;
    case Symmetry::OmegaPrime:
      for (int i = 0; i < n; ++i) {
        const double x = geometry.coordinate(i);
        m(2 * i, 2 * i) = std::polar(1.0, 2.0 * phases.zeta * x);
        m(2 * i + 1, 2 * i + 1) = std::polar(1.0, 2.0 * phases.zeta * x - 2.0 * phases.sigma);
      }
      op.antiunitary = true;
      break;
    case Symmetry::Lambda:
      for (int i = 0; i < n; ++i) {
        const double sign = (geometry.coordinate(i) % 2 == 0) ? 1.0 : -1.0;
        m(2 * i, 2 * i) = sign;
        m(2 * i + 1, 2 * i + 1) = sign;
      }
      break;
    case Symmetry::Pi: {
      // sigma_y (a, b) = (-i b, i a), placed at the mirrored site.
      const cplx i1(0.0, 1.0);
      for (int i = 0; i < n; ++i) {
        const int j = n - 1 - i;
        m(2 * j, 2 * i + 1) = -i1;
        m(2 * j + 1, 2 * i) = i1;
      }
      break;
    }
    case Symmetry::Gamma:
      // sigma_x swaps a and b, then the shift moves the new a right and new b left.
      for (int i = 0; i < n; ++i) {
        m(2 * ((i + 1) % n), 2 * i + 1) = 1.0;
        m(2 * ((i + n - 1) % n) + 1, 2 * i) = 1.0;
      }
      break;
  }
  return op;
}

SymmetryOperator make_symmetry(Symmetry which, const CoinField& field) {
  if (which == Symmetry::Pi && !field.reflection_symmetric()) {
    throw std::invalid_argument("parity needs a reflection-symmetric coin field");
  }
  CoinPhases phases{};
  if (field.uniform_phases()) phases = field.coin(0).phases();
  return make_symmetry(which, field.geometry(), phases);
}

WalkerState symmetry_apply(Symmetry which, const WalkerState& state, const CoinPhases& phases) {
  const auto op = make_symmetry(which, state.geometry(), phases);
  return WalkerState(state.geometry(), op.apply(state.vector()));
}

std::vector<Eigen::Index> physical_indices(const Geometry& geometry) {
  const Eigen::Index dim = 2 * geometry.size();
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (geometry.kind() == GeometryKind::Wire && (k == 0 || k == dim - 1)) continue;
    idx.push_back(k);
  }
  return idx;
}

double max_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                     const std::vector<Eigen::Index>& indices) {
  double worst = 0.0;
  for (Eigen::Index i : indices) {
    for (Eigen::Index j : indices) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

}  // namespace qwalk
