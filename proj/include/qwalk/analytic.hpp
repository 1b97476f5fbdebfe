#pragma once

#include <optional>
#include <vector>

#include "qwalk/geometry.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// ---------------------------------------------------------------------------
// Interface-localized states on an (effectively) infinite line
// ---------------------------------------------------------------------------

struct InterfaceStateSpec {
  double theta_minus = -0.25 * kPi;  // coin angle for x < 0, must be negative
  double theta_plus = 0.25 * kPi;    // coin angle for x >= 0, must be positive
  CoinPhases phases{};
  double eta = 0.0;  // 0 or pi
};

struct InterfaceState {
  WalkerState state;
  double xi_plus = 0.0;
  double xi_minus = 0.0;  // magnitude
  /// Squared norm of the untruncated state, 1/sin(theta_+) - 1/sin(theta_-).
  double norm_constant = 0.0;
  double omega = 0.0;
  int truncation_radius = 0;
  /// Upper bound on the probability discarded by truncation.
  double tail_mass = 0.0;
};

/// Decay rate kappa(theta) = ln((1 + sin theta) / cos theta); negative for theta < 0.
double decay_rate(double theta);
/// Localization length 1 / |kappa(theta)|.
double localization_length(double theta);

/// Builds |Psi_eta> on a truncated line covering |x| <= radius (default 40 xi_max).
/// Throws std::invalid_argument for wrong-sign angles, gapless angles, eta not in
/// {0, pi}, or a radius below 20 xi_max.
InterfaceState interface_state(const InterfaceStateSpec& spec, std::optional<int> radius = std::nullopt);

/// Same construction sampled on every site of an existing geometry (interface at x = 0).
InterfaceState interface_state(const InterfaceStateSpec& spec, const Geometry& geometry);

/// exp(-2 |x| |theta_side|), the small-angle tail law.
double tail_probability(double theta_minus, double theta_plus, int x);

struct Decomposition {
  cplx c_zero;    // <Psi_{eta=0}|Psi(0)>
  cplx c_pi;      // <Psi_{eta=pi}|Psi(0)>
  bool symmetric = false;  // c_zero == c_pi within tolerance
  double trapped_weight = 0.0;  // |c_0|^2 + |c_pi|^2 (= 2|c|^2 when symmetric)
  double band_weight = 0.0;     // 1 - trapped_weight
};

Decomposition decompose_initial(const WalkerState& initial, const WalkerState& eta0,
                                const WalkerState& etapi, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Finite wire: bulk theta in (0, pi/2), both end coins -pi/2.
// Odd D = 2L + 3 (zeta_size 1), even D = 2L + 2 (zeta_size 2).
// ---------------------------------------------------------------------------

struct WireShape {
  int L = 0;
  int zeta_size = 1;
  int size() const { return 2 * L + 4 - zeta_size; }
  double z_offset() const { return L + 1 - 0.5 * zeta_size; }
};

WireShape wire_shape(int size);

struct AnalyticGapSolution {
  double theta = 0.0;
  int L = 0;
  int zeta_size = 1;
  double omega = 0.0;
  double k = 0.0;
  double k0 = 0.0;
  double chi = 0.0;
  double phi = 0.0;
  double phi0 = 0.0;
  int mu = 1;
  int z = -1;
  /// |tan(omega/2 - pi/4) + tan(chi/2 + pi/4) tanh(k Z)| at the root.
  double residual = 0.0;
};

/// Positive gap root of the wire quantization condition. Throws ConvergenceError
/// if no root lies below theta, MarginalCase if cos(omega) ~ cos(theta).
AnalyticGapSolution solve_gap(double theta, int L, int zeta_size);

/// 2 tan(theta) ((1 + sin theta)/cos theta)^(zeta_size - 3) exp(-2 k0 L).
double approx_gap_energy(double theta, int L, int zeta_size);

/// Gap eigenvector at energy omega (+ delta for a general coin), dressed with the
/// coin phases and normalized. Lives on Geometry::wire(D).
WalkerState gap_eigenvector(const AnalyticGapSolution& sol, const CoinPhases& phases = {});

struct QuartetMember {
  WalkerState state;
  double omega = 0.0;
  double residual = 0.0;
};

/// {v, Omega' v, Lambda v, Lambda Omega' v} at {w, 2 delta - w, w - pi, 2 delta - w + pi}
/// (folded). Throws NumericalError if v is not an eigenvector of the field's walk at
/// omega to 1e-10.
std::vector<QuartetMember> gap_quartet(const WalkerState& v, double omega, const CoinField& field);

struct AnalyticBandSolution {
  double theta = 0.0;
  int L = 0;
  int zeta_size = 1;
  double omega = 0.0;
  double k = 0.0;
  int mu = 1;
  double chi = 0.0;
  double psi = 0.0;
  /// Residual of the band quantization condition (pole-free form).
  double residual = 0.0;
};

/// Positive-energy band roots for both parities. Throws NumericalError unless
/// exactly D - 3 roots are found.
std::vector<AnalyticBandSolution> solve_band(double theta, int L, int zeta_size);

WalkerState band_eigenvector(const AnalyticBandSolution& sol, const CoinPhases& phases = {});

/// The two eigenvalues of the closed seam block formed by a at x_min and b at x_max.
std::vector<double> seam_quasienergies(const CoinField& wire);

struct AnalyticSpectrum {
  AnalyticGapSolution gap;
  std::vector<double> gap_energies;   // quartet, 4 values
  std::vector<AnalyticBandSolution> band;
  std::vector<double> band_energies;  // {omega} and {-omega} shifted by delta, 2 (D - 3) values
  std::vector<double> seam_energies;  // 2 values
  std::vector<double> all;            // sorted, 2 D values
};

AnalyticSpectrum analytic_spectrum(double theta, int size, const CoinPhases& phases = {});

struct RabiGapPrediction {
  /// 2 omega_exact from the appendix solver.
  double delta_omega = 0.0;
  double period = 0.0;
  /// Main-text closed form with exponent -2D, reported for comparison only.
  double main_text_delta_omega = 0.0;
  /// 2 omega_0 from the appendix approximation.
  double approx_delta_omega = 0.0;
};

RabiGapPrediction rabi_gap_prediction(double theta, int size);

}  // namespace qwalk
