#include "qwalk/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

WalkerState::WalkerState(Geometry geometry)
    : geometry_(geometry), amplitudes_(Eigen::VectorXcd::Zero(2 * geometry.size())) {}

WalkerState::WalkerState(Geometry geometry, Eigen::VectorXcd amplitudes)
    : geometry_(geometry), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != 2 * geometry_.size()) {
    throw std::invalid_argument("amplitude vector must have 2 entries per site");
  }
}

WalkerState WalkerState::localized(const Geometry& geometry, int x, cplx a, cplx b) {
  if (!geometry.contains(x)) throw std::invalid_argument("site outside the lattice");
  WalkerState s(geometry);
  s.a_at(x) = a;
  s.b_at(x) = b;
  return s.normalize();
}

WalkerState& WalkerState::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
  amplitudes_ /= n;
  return *this;
}

bool WalkerState::is_normalized(double tol) const { return std::abs(norm() - 1.0) < tol; }

std::vector<double> WalkerState::site_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(a(i)) + std::norm(b(i));
  return p;
}

std::vector<SiteProbability> position_distribution(const WalkerState& state) {
  const auto p = state.site_probabilities();
  std::vector<SiteProbability> out;
  out.reserve(p.size());
  for (int i = 0; i < state.size(); ++i) {
    out.push_back({state.geometry().coordinate(i), p[static_cast<std::size_t>(i)]});
  }
  return out;
}

cplx overlap(const WalkerState& s1, const WalkerState& s2) {
  if (!(s1.geometry() == s2.geometry())) throw GeometryMismatch();
  return s1.vector().dot(s2.vector());  // Eigen's dot conjugates the left operand
}

double inverse_participation_ratio(const WalkerState& state) {
  const double n2 = state.vector().squaredNorm();
  double ipr = 0.0;
  for (double p : state.site_probabilities()) ipr += p * p;
  return ipr / (n2 * n2);
}

}  // namespace qwalk
