#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/analytic.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

/// Single-site initial condition |x> (x) (a, b).
struct SiteSpinor {
  int x = 0;
  cplx a{0.70710678118654752, 0.0};
  cplx b{0.0, 0.70710678118654752};
};

/// Pearson correlation between s[t] and s[t + lag].
double lag_autocorrelation(std::span<const double> series, int lag);

/// Least-squares slope of ln p against |x| over r_lo <= |x| <= r_hi on one side
/// (side = +1 or -1), using only sites with p > 0 of the given parity.
double side_log_slope(std::span<const int> xs, std::span<const double> p, int side, int r_lo, int r_hi,
                      int parity);

// ---------------------------------------------------------------------------
// Line walks (interface, homogeneous, defect)
// ---------------------------------------------------------------------------

struct InterfaceEvolutionOptions {
  SiteSpinor initial{};
  bool record_trajectory = true;
  /// Central window |x| <= factor * xi, xi the larger side localization length.
  double central_window_xi = 3.0;
};

struct InterfaceEvolution {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  int steps = 0;
  Geometry geometry = Geometry::cycle(2);
  std::vector<int> xs;
  Trajectory trajectory;
  std::vector<double> final_distribution;
  /// tail_probability(theta_-, theta_+, x) at every site, for overlays.
  std::vector<double> tail_overlay;
  double central_radius = 0.0;
  /// Probability inside the central window at t = 0..steps.
  std::vector<double> central_probability;
  double max_norm_deviation = 0.0;
};

/// Walk on a line with theta_minus for x < 0 and theta_plus for x >= 0 (equal angles
/// give the homogeneous walk), exact for `steps` steps.
InterfaceEvolution run_interface_evolution(double theta_minus, double theta_plus, const CoinPhases& phases,
                                           int steps, const InterfaceEvolutionOptions& options = {});

struct DefectRun {
  double theta_a = 0.0;
  std::vector<int> xs;
  std::vector<double> final_distribution;
  double p_at(int x) const;
};

/// theta_a at x = 0 in a theta_b bulk, one run per theta_a (in parallel).
std::vector<DefectRun> run_defect_scan(double theta_b, std::span<const double> theta_as, int steps,
                                       const CoinPhases& phases = {}, const SiteSpinor& initial = {});

// ---------------------------------------------------------------------------
// Rings
// ---------------------------------------------------------------------------

inline constexpr CoinPhases kCycleSweepPhases{-0.5 * kPi, -0.5 * kPi, 0.0};

std::vector<SweepPoint> run_cycle_spectrum(int size, int segment, double theta_b, const CoinPhases& phases,
                                           std::span<const double> theta_as, bool with_ipr = true);

// ---------------------------------------------------------------------------
// Wires
// ---------------------------------------------------------------------------

struct WireDynamicsConfig {
  int size = 21;
  double theta = 0.1 * kPi;
  double left_end = 0.5 * kPi;
  double right_end = 0.5 * kPi;
  CoinPhases phases{};
  /// Default: |x_min + 1> (x) (1, 0).
  std::optional<SiteSpinor> initial;
  int steps = 200;
};

struct WireDynamics {
  Geometry geometry = Geometry::cycle(2);
  std::vector<int> xs;
  Trajectory trajectory;
};

WireDynamics run_wire_dynamics(const WireDynamicsConfig& config);

struct RabiOptions {
  /// Default ceil(1.5 * 2 pi / delta_omega).
  std::optional<int> steps;
  /// Default Psi_L.
  std::optional<WalkerState> initial;
  /// Half-width of the window around delta searched for the pair.
  double window = 0.3;
  /// The pair must be at least this many times closer to delta than any other level.
  double isolation = 10.0;
  bool record_series = true;
};

struct RabiAnalysis {
  WalkerState psi_L;
  WalkerState psi_R;
  std::pair<double, double> omega_pair;  // (omega, -omega) around delta
  double delta_omega = 0.0;
  double predicted_period = 0.0;         // 2 pi / delta_omega
  std::vector<double> p_L;
  std::vector<double> p_R;
  double confinement = 0.0;              // min_t (p_L + p_R)
  double period_estimate = 0.0;          // NaN when no full return was observed
  double max_center_probability = 0.0;   // at the middle site
  double max_center_ratio = 0.0;         // middle-site / largest-site probability
  double orthogonality = 0.0;            // |<Psi_L|Psi_R>|
  int steps = 0;
};

struct GapPair {
  std::size_t plus;   // index of +omega in the spectral result
  std::size_t minus;  // index of -omega
};

/// Locates the isolated pair closest to delta. Returns nullopt if none qualifies.
std::optional<GapPair> find_gap_pair(const SpectralResult& result, double delta, double window,
                                     double isolation);

/// Psi_L, Psi_R from the pair, with the relative phase chosen so Psi_L carries the
/// most weight on the left half of the wire.
std::pair<WalkerState, WalkerState> left_right_states(const WalkerState& plus, const WalkerState& minus);

/// Discrete first-return estimate with parabolic refinement; NaN if none found.
double estimate_period(std::span<const double> p_L, std::span<const double> p_R);

/// Throws NumericalError if the wire has no isolated gap pair.
RabiAnalysis run_rabi_transport(const CoinField& wire, const RabiOptions& options = {});
RabiAnalysis run_rabi_transport(int size, double theta, const CoinPhases& phases = {},
                                std::optional<int> steps = std::nullopt);

enum class DisorderInitial { LeftSite, CleanPsiL };

struct DisorderConfig {
  int size = 21;
  double theta_lo = 0.0;
  double theta_hi = 0.2 * kPi;
  std::uint64_t seed = 1;
  DisorderInitial initial = DisorderInitial::LeftSite;
  std::optional<int> steps;
  int max_steps = 200000;
};

struct DisorderRealization {
  std::uint64_t seed = 0;
  std::vector<double> thetas;  // full wire, ends included
  std::optional<RabiAnalysis> analysis;
  std::string failure;         // set when no gap pair was found
};

DisorderRealization run_disorder_rabi(const DisorderConfig& config);

/// Realizations with seeds base.seed, base.seed + 1, ..., in parallel.
std::vector<DisorderRealization> run_disorder_batch(const DisorderConfig& base, int count);

// ---------------------------------------------------------------------------
// Gap scaling
// ---------------------------------------------------------------------------

struct GapScalingRow {
  double theta = 0.0;
  int L = 0;
  double omega_exact = 0.0;
  double omega_approx = 0.0;
  /// Smallest |omega| from diagonalizing the wire; NaN if not requested.
  double omega_numeric = 0.0;
};

std::vector<GapScalingRow> run_gap_scaling(std::span<const double> thetas, int l_min, int l_max,
                                           int zeta_size = 1, bool diagonalize_wire = true);

struct GapScalingFit {
  double theta = 0.0;
  double slope = 0.0;           // d ln(omega_exact) / dL
  double expected_slope = 0.0;  // -2 k0
  double max_approx_deviation = 0.0;  // max |omega_0 / omega_exact - 1| over the rows used
};

/// One fit per theta; approximation deviations only over L >= approx_from.
std::vector<GapScalingFit> fit_gap_scaling(std::span<const GapScalingRow> rows, int approx_from = 5);

}  // namespace qwalk
