#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/geometry.hpp"

namespace qwalk {

/// Walker wavefunction: per site the pair (a_x, b_x), a on |+1> (right mover),
/// b on |-1> (left mover). Stored interleaved [a_0, b_0, a_1, b_1, ...] so the
/// vector can be multiplied directly by the one-step unitary.
class WalkerState {
 public:
  explicit WalkerState(Geometry geometry);
  WalkerState(Geometry geometry, Eigen::VectorXcd amplitudes);

  /// Single-site state |x> (a, b), normalized.
  static WalkerState localized(const Geometry& geometry, int x, cplx a, cplx b);

  const Geometry& geometry() const { return geometry_; }
  int size() const { return geometry_.size(); }

  cplx& a(int index) { return amplitudes_[2 * index]; }
  cplx& b(int index) { return amplitudes_[2 * index + 1]; }
  cplx a(int index) const { return amplitudes_[2 * index]; }
  cplx b(int index) const { return amplitudes_[2 * index + 1]; }
  cplx& a_at(int x) { return a(geometry_.index(x)); }
  cplx& b_at(int x) { return b(geometry_.index(x)); }
  cplx a_at(int x) const { return a(geometry_.index(x)); }
  cplx b_at(int x) const { return b(geometry_.index(x)); }

  const Eigen::VectorXcd& vector() const { return amplitudes_; }
  Eigen::VectorXcd& vector() { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  WalkerState& normalize();
  bool is_normalized(double tol = 1e-12) const;

  /// p_x = |a_x|^2 + |b_x|^2 in site-index order.
  std::vector<double> site_probabilities() const;

 private:
  Geometry geometry_;
  Eigen::VectorXcd amplitudes_;
};

struct SiteProbability {
  int x;
  double p;
};

/// (x, p_x) pairs in site-index order.
std::vector<SiteProbability> position_distribution(const WalkerState& state);

/// <s1|s2>, antilinear in the first argument.
cplx overlap(const WalkerState& s1, const WalkerState& s2);

double inverse_participation_ratio(const WalkerState& state);

}  // namespace qwalk
