#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/geometry.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

/// Dense one-step unitary in the interleaved basis (2i -> a at site i, 2i+1 -> b).
Eigen::MatrixXcd build_unitary(const CoinField& field);

/// Full eigendecomposition of a one-step unitary, sorted by ascending omega and
/// then descending IPR.
struct SpectralResult {
  std::vector<double> quasienergies;
  std::vector<WalkerState> eigenvectors;
  std::vector<double> residuals;
  std::vector<double> ipr;
  /// Fitted localization length about the probability maximum; nullopt when the
  /// profile is not exponential or too few sites are usable.
  std::vector<std::optional<double>> xi;

  std::size_t size() const { return quasienergies.size(); }
  double max_residual() const;
};

struct DiagonalizeOptions {
  /// Eigenvalues closer than this in omega are treated as one degenerate cluster.
  double degeneracy_tol = 1e-9;
  bool fit_localization = true;
};

/// Schur-based diagonalization. Throws NumericalError if the eigensolver fails or
/// the input is not unitary to 1e-10.
SpectralResult diagonalize(const Eigen::MatrixXcd& unitary, const Geometry& geometry,
                           const DiagonalizeOptions& options = {});
SpectralResult diagonalize(const CoinField& field, const DiagonalizeOptions& options = {});

/// Quasienergies only (cheaper: no eigenvectors, no metrics), sorted ascending.
std::vector<double> quasienergies(const CoinField& field);

struct LocalizationFitOptions {
  /// Sites with |x - center| <= exclude_radius are dropped from the fit.
  int exclude_radius = 1;
  /// Optional outer cutoff on |x - center|.
  std::optional<int> max_radius;
  double min_probability = 1e-12;
  /// |slope| below this (per site) flags the profile as non-exponential.
  double flat_slope = 1e-3;
  /// Only fit sites of this parity relative to the center (nullopt: all sites).
  std::optional<int> parity;
};

struct LocalizationFit {
  double slope = 0.0;
  double intercept = 0.0;
  int sites = 0;
  bool exponential = false;
  /// p_x ~ exp(-2|x - center| / xi), so xi = -2 / slope.
  double xi() const { return -2.0 / slope; }
};

/// Least-squares fit of ln p_x against |x - center|. Throws std::invalid_argument
/// with fewer than 4 usable sites.
LocalizationFit localization_length_fit(const WalkerState& state, int center,
                                        const LocalizationFitOptions& options = {});

/// True if omega lies in [lo, hi], or, when lo > hi, in the window wrapping through pi.
bool in_window(double omega, double lo, double hi);

/// Indices (into result) of eigenpairs inside the window whose IPR exceeds the
/// threshold (default 2/D).
std::vector<std::size_t> gap_state_filter(const SpectralResult& result, double lo, double hi,
                                          std::optional<double> ipr_threshold = std::nullopt);

/// Parameterized family swept over theta_A.
struct SweepScenario {
  Scenario kind = Scenario::CycleTwoSegment;
  int size = 42;
  /// Segment length d for two-segment cycles.
  int segment = 21;
  double theta_b = 0.25 * kPi;
  CoinPhases phases{};
};

CoinField sweep_field(const SweepScenario& scenario, double theta_a);

struct SweepPoint {
  double theta_a = 0.0;
  std::vector<double> quasienergies;
  std::vector<double> ipr;
};

/// One diagonalization per grid point, run in parallel; output order follows the grid.
std::vector<SweepPoint> sweep_parameter(const SweepScenario& scenario, std::span<const double> grid,
                                        bool with_ipr = true);

/// |omega_1 - omega_2| for the two quasienergies closest to `center` (on the circle).
double pair_splitting(std::span<const double> quasienergies, double center);

}  // namespace qwalk
