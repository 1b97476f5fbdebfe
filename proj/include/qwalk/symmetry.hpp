#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/geometry.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

enum class Symmetry { Omega, OmegaPrime, Lambda, Pi, Gamma };

std::string_view to_string(Symmetry which);
Symmetry symmetry_from_string(std::string_view name);

/// An operator v -> M v (unitary) or v -> M conj(v) (antiunitary).
struct SymmetryOperator {
  Symmetry which;
  Eigen::MatrixXcd matrix;
  bool antiunitary = false;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  /// O A O^{-1} for a linear operator A.
  Eigen::MatrixXcd conjugate(const Eigen::MatrixXcd& a) const;
  /// O^2 as a linear matrix (M M for unitary, M conj(M) for antiunitary).
  Eigen::MatrixXcd square() const;
};

/// Omega: complex conjugation. OmegaPrime: conjugation followed by
/// diag(e^{2i zeta x}, e^{2i zeta x} e^{-2i sigma}). Lambda: (-1)^x.
/// Pi: reflection x -> x_min + x_max - x with sigma_y. Gamma: S (I (x) sigma_x).
SymmetryOperator make_symmetry(Symmetry which, const Geometry& geometry, const CoinPhases& phases = {});

/// Pi additionally requires a reflection-symmetric field; throws std::invalid_argument otherwise.
SymmetryOperator make_symmetry(Symmetry which, const CoinField& field);

WalkerState symmetry_apply(Symmetry which, const WalkerState& state, const CoinPhases& phases = {});

/// Basis indices of the physical sector. On a wire this drops the two seam
/// components (a at x_min, b at x_max), which form a closed block of their own
/// and are not part of the lattice the symmetries act on.
std::vector<Eigen::Index> physical_indices(const Geometry& geometry);

/// max |A_ij - B_ij| over i, j in `indices`.
double max_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                     const std::vector<Eigen::Index>& indices);

}  // namespace qwalk
