#include "qwalk/coin.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qwalk {

double fold_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

CoinParams::CoinParams(double theta, CoinPhases phases) : phases_(phases) {
  if (!std::isfinite(theta) || !std::isfinite(phases.delta) || !std::isfinite(phases.zeta) ||
      !std::isfinite(phases.sigma)) {
    throw std::invalid_argument("coin angles must be finite");
  }
  theta_ = fold_angle(theta);
}

int CoinParams::phase_label() const {
  if (theta_ == 0.0 || theta_ == kPi) return 0;
  return theta_ > 0.0 ? 1 : -1;
}

namespace {

// Quarter turns are exact so that reflecting coins (|theta| = pi/2) never leak.
std::pair<double, double> cos_sin(double theta) {
  if (theta == 0.0) return {1.0, 0.0};
  if (theta == kPi) return {-1.0, 0.0};
  if (theta == 0.5 * kPi) return {0.0, 1.0};
  if (theta == -0.5 * kPi) return {0.0, -1.0};
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

Coin2 coin_matrix(const CoinParams& p) {
  const auto [c, s] = cos_sin(p.theta());
  const cplx global = std::polar(1.0, -p.delta());
  const cplx ez = std::polar(1.0, p.zeta());
  const cplx ezs = std::polar(1.0, p.zeta() + p.sigma());
  Coin2 m;
  m << ez * c, ezs * s, -std::conj(ezs) * s, std::conj(ez) * c;
  return global * m;
}

}  // namespace qwalk
