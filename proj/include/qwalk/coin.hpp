#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qwalk {

using cplx = std::complex<double>;
using Coin2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;

/// Folds an angle into (-pi, pi].
double fold_angle(double angle);

/// Coin phases shared by every site of a field (delta, zeta, sigma of the U(2) coin).
struct CoinPhases {
  double delta = 0.0;
  double zeta = 0.0;
  double sigma = 0.0;

  bool is_real() const { return delta == 0.0 && zeta == 0.0 && sigma == 0.0; }
  bool operator==(const CoinPhases&) const = default;
};

/// The four angles of a U(2) coin. theta is stored folded into (-pi, pi];
/// its sign labels the topological phase of a homogeneous walk.
class CoinParams {
 public:
  CoinParams() = default;
  explicit CoinParams(double theta, CoinPhases phases = {});

  double delta() const { return phases_.delta; }
  double zeta() const { return phases_.zeta; }
  double sigma() const { return phases_.sigma; }
  double theta() const { return theta_; }
  const CoinPhases& phases() const { return phases_; }

  /// +1 or -1 for the two gapped phases, 0 on the gapless points theta in {0, pi}.
  int phase_label() const;

  bool operator==(const CoinParams&) const = default;

 private:
  double theta_ = 0.0;
  CoinPhases phases_{};
};

/// e^{-i delta} [[e^{i zeta} cos, e^{i(zeta+sigma)} sin], [-e^{-i(zeta+sigma)} sin, e^{-i zeta} cos]]
Coin2 coin_matrix(const CoinParams& p);

}  // namespace qwalk
