#include "qwalk/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/symmetry.hpp"

namespace qwalk {

namespace {

constexpr double kQuarterPi = 0.25 * kPi;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

/// Bisects f on [lo, hi] (f(lo) < 0 < f(hi)) until the bracket cannot shrink further.
/// `geometric` splits at the geometric mean while the bracket spans more than a factor 2,
/// so roots many decades below hi are reached in a few dozen steps.
template <class F>
double bisect(F&& f, double lo, double hi, bool geometric) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = (geometric && lo > 0.0 && hi > 2.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void fill_wire(WalkerState& v, const CoinPhases& phases, auto&& amplitude) {
  const Geometry& g = v.geometry();
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    const int x = g.coordinate(i);
    const cplx dress = std::polar(1.0, phases.zeta * x);
    v.a(i) = (i == 0) ? cplx{} : dress * amplitude(x);
    v.b(i) = (i == n - 1) ? cplx{} : dress * std::polar(1.0, -phases.sigma) * std::conj(amplitude(x + 1));
  }
  v.normalize();
}

}  // namespace

double decay_rate(double theta) {
  return std::log((1.0 + std::sin(theta)) / std::cos(theta));
}

double localization_length(double theta) { return 1.0 / std::abs(decay_rate(theta)); }

namespace {

void validate(const InterfaceStateSpec& spec) {
  require(std::isfinite(spec.theta_minus) && std::isfinite(spec.theta_plus), "non-finite interface angle");
  require(spec.theta_minus < 0.0 && spec.theta_plus > 0.0, "interface needs theta_minus < 0 < theta_plus");
  require(spec.theta_minus > -0.5 * kPi && spec.theta_plus < 0.5 * kPi,
          "interface angles must satisfy |theta| < pi/2 (gapped, decaying branch)");
  require(std::abs(spec.eta) < 1e-12 || std::abs(spec.eta - kPi) < 1e-12, "eta must be 0 or pi");
}

}  // namespace

InterfaceState interface_state(const InterfaceStateSpec& spec, const Geometry& geometry) {
  validate(spec);
  const double km = decay_rate(spec.theta_minus);  // < 0
  const double kp = decay_rate(spec.theta_plus);   // > 0
  const bool pi_branch = std::abs(spec.eta) > 1.0;
  const double eta = pi_branch ? kPi : 0.0;

  WalkerState v(geometry);
  for (int i = 0; i < geometry.size(); ++i) {
    const int x = geometry.coordinate(i);
    const double kappa = x >= 0 ? kp : km;
    // (-1)^x for eta = pi exactly, without rounding in e^{i pi x}.
    const cplx sign = (pi_branch && (x % 2 != 0)) ? -1.0 : 1.0;
    const cplx a = sign * std::polar(std::exp(-kappa * x), spec.phases.zeta * x);
    v.a(i) = a;
    v.b(i) = -std::exp(-kappa) * std::polar(1.0, -spec.phases.sigma) * a;
  }
  v.normalize();

  InterfaceState out{std::move(v), 0, 0, 0, 0, 0, 0};
  out.xi_plus = 1.0 / kp;
  out.xi_minus = 1.0 / std::abs(km);
  out.norm_constant = 1.0 / std::sin(spec.theta_plus) - 1.0 / std::sin(spec.theta_minus);
  out.omega = fold_angle(spec.phases.delta + eta);
  out.truncation_radius = std::min(geometry.x_max(), -geometry.x_min());
  // Unnormalized p_x sums to q^{r+1}/sin(theta_+) over x > r and q^r/|sin(theta_-)| over
  // x < -r, with q = e^{-2|kappa|} on each side.
  const double tail_plus = std::exp(-2.0 * kp * (geometry.x_max() + 1)) / std::sin(spec.theta_plus);
  const double tail_minus = std::exp(-2.0 * std::abs(km) * (-geometry.x_min())) / std::abs(std::sin(spec.theta_minus));
  out.tail_mass = (tail_plus + tail_minus) / out.norm_constant;
  return out;
}

InterfaceState interface_state(const InterfaceStateSpec& spec, std::optional<int> radius) {
  validate(spec);
  const double xi_max = std::max(localization_length(spec.theta_minus), localization_length(spec.theta_plus));
  const int r = radius.value_or(static_cast<int>(std::ceil(40.0 * xi_max)));
  require(r >= 20.0 * xi_max, "truncation radius must be at least 20 localization lengths");
  auto out = interface_state(spec, Geometry::truncated_line(0, r));
  out.truncation_radius = r;
  return out;
}

double tail_probability(double theta_minus, double theta_plus, int x) {
  const double theta = x >= 0 ? theta_plus : theta_minus;
  return std::exp(-2.0 * std::abs(x) * std::abs(theta));
}

Decomposition decompose_initial(const WalkerState& initial, const WalkerState& eta0,
                                const WalkerState& etapi, double tol) {
  Decomposition d;
  d.c_zero = overlap(eta0, initial);
  d.c_pi = overlap(etapi, initial);
  d.symmetric = std::abs(d.c_zero - d.c_pi) < tol;
  d.trapped_weight = std::norm(d.c_zero) + std::norm(d.c_pi);
  d.band_weight = 1.0 - d.trapped_weight;
  return d;
}

WireShape wire_shape(int size) {
  require(size >= 4, "wire needs at least 4 sites");
  WireShape s;
  s.zeta_size = (size % 2 == 1) ? 1 : 2;
  s.L = (size % 2 == 1) ? (size - 3) / 2 : (size - 2) / 2;
  return s;
}

double approx_gap_energy(double theta, int L, int zeta_size) {
  const double k0 = decay_rate(theta);
  return 2.0 * std::tan(theta) * std::exp(k0 * (zeta_size - 3)) * std::exp(-2.0 * k0 * L);
}

AnalyticGapSolution solve_gap(double theta, int L, int zeta_size) {
  require(theta > 0.0 && theta < 0.5 * kPi, "gap solver needs 0 < theta < pi/2");
  require(L >= 1, "gap solver needs L >= 1");
  require(zeta_size == 1 || zeta_size == 2, "zeta_size must be 1 or 2");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double zoff = L + 1 - 0.5 * zeta_size;

  // tan(w/2 - pi/4) = -tan(chi/2 + pi/4) tanh(k Z), cross-multiplied with
  // u = tan(w/2), v = tan(chi/2) so that nothing cancels when w is tiny:
  //   H(w) = (u + v) - (1 + u)(1 + v) / (e^{2kZ} + 1).
  // H(0) < 0 and H has a spurious zero at w = theta, so the bracket stays below it.
  auto h = [&](double w) {
    const double u = std::tan(0.5 * w);
    const double v = std::tan(0.5 * std::asin(std::min(1.0, std::sin(w) / s)));
    const double k = std::acosh(std::max(1.0, std::cos(w) / c));
    return (u + v) - (1.0 + u) * (1.0 + v) / (std::exp(2.0 * k * zoff) + 1.0);
  };

  const double cap = theta * (1.0 - 1e-9);
  const double guess = std::min(approx_gap_energy(theta, L, zeta_size), 0.5 * cap);
  double lo = 0.5 * guess;
  double hi = std::min(2.0 * guess, cap);
  while (h(lo) >= 0.0) {
    lo *= 0.25;
    if (lo < 1e-300) throw ConvergenceError("gap root bracket underflowed");
  }
  while (h(hi) <= 0.0) {
    if (hi >= cap) throw ConvergenceError("no gap root below theta");
    hi = std::min(2.0 * hi, cap);
  }
  const double w = bisect(h, lo, hi, true);

  AnalyticGapSolution sol;
  sol.theta = theta;
  sol.L = L;
  sol.zeta_size = zeta_size;
  sol.omega = w;
  if (std::abs(std::cos(w) - c) < 1e-12) throw MarginalCase("gap root sits at cos(omega) = cos(theta)");
  sol.k = std::acosh(std::cos(w) / c);
  sol.k0 = decay_rate(theta);
  sol.chi = std::asin(std::sin(w) / s);
  sol.phi = 0.5 * sol.chi + kQuarterPi;
  sol.phi0 = approx_gap_energy(theta, L, zeta_size) / (2.0 * s);
  sol.z = -1;
  sol.mu = 1;
  sol.residual = std::abs(std::tan(0.5 * w - kQuarterPi) + std::tan(sol.phi) * std::tanh(sol.k * zoff));
  return sol;
}

WalkerState gap_eigenvector(const AnalyticGapSolution& sol, const CoinPhases& phases) {
  const WireShape shape{sol.L, sol.zeta_size};
  WalkerState v(Geometry::wire(shape.size()));
  const double shift = 0.5 * sol.zeta_size;
  const cplx pre = std::polar(1.0, -kQuarterPi);
  fill_wire(v, phases, [&](int x) {
    const cplx e(sol.k * (x - shift), sol.phi);
    return pre * (std::exp(e) + std::exp(-e));
  });
  return v;
}

std::vector<QuartetMember> gap_quartet(const WalkerState& v, double omega, const CoinField& field) {
  if (!(v.geometry() == field.geometry())) throw GeometryMismatch();
  if (!field.uniform_phases()) throw std::invalid_argument("quartet needs uniform coin phases");
  const CoinPhases phases = field.coin(0).phases();
  const Eigen::MatrixXcd u = build_unitary(field);
  auto residual = [&](const Eigen::VectorXcd& x, double w) {
    return (u * x - std::polar(1.0, -w) * x).norm() / x.norm();
  };
  const double r0 = residual(v.vector(), omega);
  if (r0 > 1e-10) throw NumericalError("quartet seed is not an eigenvector (residual " + std::to_string(r0) + ")");

  const auto phs = make_symmetry(phases.is_real() ? Symmetry::Omega : Symmetry::OmegaPrime, v.geometry(), phases);
  const auto lam = make_symmetry(Symmetry::Lambda, v.geometry());
  const double d = phases.delta;
  const Eigen::VectorXcd ov = phs.apply(v.vector());
  const std::vector<std::pair<Eigen::VectorXcd, double>> members = {
      {v.vector(), fold_angle(omega)},
      {ov, fold_angle(2.0 * d - omega)},
      {lam.apply(v.vector()), fold_angle(omega - kPi)},
      {lam.apply(ov), fold_angle(2.0 * d - omega + kPi)},
  };
  std::vector<QuartetMember> out;
  for (const auto& [x, w] : members) {
    out.push_back({WalkerState(v.geometry(), x), w, residual(x, w)});
  }
  return out;
}

namespace {

/// Band quantization tan(w/2 + pi/4) sqrt((sin w + s)/(sin w - s)) = -tan(kZ + (1+mu) pi/4),
/// multiplied through by the cosines and sqrt(sin w - s) so it has no poles.
double band_condition(double k, double s, double c, double zoff, int mu) {
  const double w = std::acos(c * std::cos(k));
  const double a = 0.5 * w + kQuarterPi;
  const double b = k * zoff + (1 + mu) * kQuarterPi;
  const double sw = std::sin(w);
  return std::sqrt(sw + s) * std::sin(a) * std::cos(b) + std::sqrt(std::max(0.0, sw - s)) * std::cos(a) * std::sin(b);
}

cplx band_amplitude(const AnalyticBandSolution& sol, int x) {
  const double phase = sol.k * (x - 0.5 * sol.zeta_size) + (1 + sol.mu) * kQuarterPi;
  const double cc = std::cos(sol.chi);
  return std::polar(1.0, kQuarterPi) *
         (std::sqrt(1.0 + cc) * std::polar(1.0, phase) + std::sqrt(1.0 - cc) * std::polar(1.0, -phase));
}

}  // namespace

std::vector<AnalyticBandSolution> solve_band(double theta, int L, int zeta_size) {
  require(theta > 0.0 && theta < 0.5 * kPi, "band solver needs 0 < theta < pi/2");
  require(L >= 1, "band solver needs L >= 1");
  require(zeta_size == 1 || zeta_size == 2, "zeta_size must be 1 or 2");
  const WireShape shape{L, zeta_size};
  const int size = shape.size();
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double zoff = shape.z_offset();

  std::vector<AnalyticBandSolution> out;
  // Brackets between midpoints of an 8D grid: k = 0 and k = pi are spurious zeros
  // of the pole-free form (sin w = s there) and must stay outside every bracket.
  const int n = 8 * size;
  auto grid = [&](int j) { return (j + 0.5) * kPi / n; };
  for (int mu : {1, -1}) {
    auto f = [&](double k) { return band_condition(k, s, c, zoff, mu); };
    double k1 = grid(0);
    double f1 = f(k1);
    for (int j = 1; j < n; ++j) {
      const double k2 = grid(j);
      const double f2 = f(k2);
      if (f1 == 0.0 || f1 * f2 < 0.0) {
        const double k = (f1 == 0.0) ? k1 : bisect([&](double kk) { return f1 < 0.0 ? f(kk) : -f(kk); }, k1, k2, false);
        AnalyticBandSolution sol;
        sol.theta = theta;
        sol.L = L;
        sol.zeta_size = zeta_size;
        sol.k = k;
        sol.mu = mu;
        sol.omega = std::acos(c * std::cos(k));
        sol.chi = std::asin(std::min(1.0, s / std::sin(sol.omega)));
        sol.psi = fold_angle(std::arg(band_amplitude(sol, L + 1)) - kQuarterPi);
        sol.residual = std::abs(f(k));
        out.push_back(sol);
      }
      k1 = k2;
      f1 = f2;
    }
  }
  if (static_cast<int>(out.size()) != size - 3) {
    throw NumericalError("band solver found " + std::to_string(out.size()) + " roots, expected " +
                         std::to_string(size - 3));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.omega < r.omega; });
  return out;
}

WalkerState band_eigenvector(const AnalyticBandSolution& sol, const CoinPhases& phases) {
  const WireShape shape{sol.L, sol.zeta_size};
  WalkerState v(Geometry::wire(shape.size()));
  fill_wire(v, phases, [&](int x) { return band_amplitude(sol, x); });
  return v;
}

std::vector<double> seam_quasienergies(const CoinField& wire) {
  require(wire.geometry().kind() == GeometryKind::Wire, "seam modes exist only on wires");
  const int n = wire.geometry().size();
  // U maps a(x_min) -> C_L(1,0) b(x_max) and b(x_max) -> C_R(0,1) a(x_min).
  const cplx lambda = std::sqrt(wire.matrix(n - 1)(0, 1) * wire.matrix(0)(1, 0));
  return {fold_angle(-std::arg(lambda)), fold_angle(-std::arg(-lambda))};
}

AnalyticSpectrum analytic_spectrum(double theta, int size, const CoinPhases& phases) {
  const WireShape shape = wire_shape(size);
  const double d = phases.delta;
  AnalyticSpectrum out;
  out.gap = solve_gap(theta, shape.L, shape.zeta_size);
  const double w = out.gap.omega;
  out.gap_energies = {fold_angle(d + w), fold_angle(d - w), fold_angle(d + w - kPi), fold_angle(d - w + kPi)};
  out.band = solve_band(theta, shape.L, shape.zeta_size);
  for (const auto& b : out.band) {
    out.band_energies.push_back(fold_angle(d + b.omega));
    out.band_energies.push_back(fold_angle(d - b.omega));
  }
  out.seam_energies = seam_quasienergies(CoinField::wire(size, theta, -0.5 * kPi, -0.5 * kPi, phases));
  out.all = out.gap_energies;
  out.all.insert(out.all.end(), out.band_energies.begin(), out.band_energies.end());
  out.all.insert(out.all.end(), out.seam_energies.begin(), out.seam_energies.end());
  std::sort(out.all.begin(), out.all.end());
  return out;
}

RabiGapPrediction rabi_gap_prediction(double theta, int size) {
  const WireShape shape = wire_shape(size);
  const auto sol = solve_gap(theta, shape.L, shape.zeta_size);
  const double s = std::sin(theta);
  RabiGapPrediction p;
  p.delta_omega = 2.0 * sol.omega;
  p.period = 2.0 * kPi / p.delta_omega;
  p.main_text_delta_omega = 2.0 * std::sin(2.0 * theta) / ((1.0 + s) * (1.0 + s)) * std::exp(-2.0 * sol.k0 * size);
  p.approx_delta_omega = 2.0 * approx_gap_energy(theta, shape.L, shape.zeta_size);
  return p;
}

}  // namespace qwalk
