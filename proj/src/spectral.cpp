#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qwalk/errors.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

Eigen::MatrixXcd build_unitary(const CoinField& field) {
  const int n = field.geometry().size();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const Coin2& c = field.matrix(i);
    const int right = (i + 1) % n;
    const int left = (i + n - 1) % n;
    for (int col = 0; col < 2; ++col) {
      u(2 * right, 2 * i + col) += c(0, col);
      u(2 * left + 1, 2 * i + col) += c(1, col);
    }
  }
  return u;
}

double SpectralResult::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

namespace {

double quasienergy(cplx lambda) { return fold_angle(-std::arg(lambda)); }

Eigen::ComplexSchur<Eigen::MatrixXcd> schur_of(const Eigen::MatrixXcd& u, bool vectors) {
  const Eigen::Index n = u.rows();
  const double defect = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw NumericalError("matrix is not unitary (defect " + std::to_string(defect) + ")");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, vectors);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition did not converge");
  return schur;
}

/// Modified Gram-Schmidt over columns [begin, end).
void orthonormalize(Eigen::MatrixXcd& q, Eigen::Index begin, Eigen::Index end) {
  for (Eigen::Index j = begin; j < end; ++j) {
    for (Eigen::Index i = begin; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    q.col(j).normalize();
  }
}

}  // namespace

SpectralResult diagonalize(const Eigen::MatrixXcd& unitary, const Geometry& geometry,
                           const DiagonalizeOptions& options) {
  const Eigen::Index dim = unitary.rows();
  if (unitary.cols() != dim || dim != 2 * geometry.size()) {
    throw std::invalid_argument("unitary dimension does not match the geometry");
  }
  // A normal matrix has a diagonal Schur form, so the Schur vectors are an
  // orthonormal eigenbasis even inside near-degenerate clusters.
  const auto schur = schur_of(unitary, true);
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::MatrixXcd q = schur.matrixU();

  std::vector<double> omega(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) omega[static_cast<std::size_t>(j)] = quasienergy(t(j, j));

  std::vector<double> ipr(omega.size());
  for (Eigen::Index j = 0; j < dim; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < geometry.size(); ++i) {
      const double p = std::norm(q(2 * i, j)) + std::norm(q(2 * i + 1, j));
      s += p * p;
    }
    ipr[static_cast<std::size_t>(j)] = s;
  }

  std::vector<std::size_t> order(omega.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (omega[l] != omega[r]) return omega[l] < omega[r];
    return ipr[l] > ipr[r];
  });

  Eigen::MatrixXcd sorted(dim, dim);
  SpectralResult result;
  result.quasienergies.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.col(static_cast<Eigen::Index>(k)) = q.col(static_cast<Eigen::Index>(order[k]));
    result.quasienergies.push_back(omega[order[k]]);
  }
  for (Eigen::Index begin = 0; begin < dim;) {
    Eigen::Index end = begin + 1;
    while (end < dim && result.quasienergies[static_cast<std::size_t>(end)] -
                                result.quasienergies[static_cast<std::size_t>(end - 1)] <
                            options.degeneracy_tol) {
      ++end;
    }
    if (end - begin > 1) orthonormalize(sorted, begin, end);
    begin = end;
  }

  result.eigenvectors.reserve(order.size());
  for (Eigen::Index k = 0; k < dim; ++k) {
    WalkerState v(geometry, sorted.col(k));
    const cplx lambda = std::polar(1.0, -result.quasienergies[static_cast<std::size_t>(k)]);
    result.residuals.push_back((unitary * v.vector() - lambda * v.vector()).norm());
    result.ipr.push_back(inverse_participation_ratio(v));
    std::optional<double> xi;
    if (options.fit_localization) {
      const auto p = v.site_probabilities();
      const int peak = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
      try {
        const auto fit = localization_length_fit(v, geometry.coordinate(peak));
        if (fit.exponential && fit.slope < 0.0) xi = fit.xi();
      } catch (const std::invalid_argument&) {
      }
    }
    result.xi.push_back(xi);
    result.eigenvectors.push_back(std::move(v));
  }
  return result;
}

SpectralResult diagonalize(const CoinField& field, const DiagonalizeOptions& options) {
  return diagonalize(build_unitary(field), field.geometry(), options);
}

std::vector<double> quasienergies(const CoinField& field) {
  const auto schur = schur_of(build_unitary(field), false);
  const auto& t = schur.matrixT();
  std::vector<double> omega(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index j = 0; j < t.rows(); ++j) omega[static_cast<std::size_t>(j)] = quasienergy(t(j, j));
  std::sort(omega.begin(), omega.end());
  return omega;
}

LocalizationFit localization_length_fit(const WalkerState& state, int center,
                                        const LocalizationFitOptions& options) {
  const auto p = state.site_probabilities();
  const double n2 = state.vector().squaredNorm();
  std::vector<double> r;
  std::vector<double> lp;
  for (int i = 0; i < state.size(); ++i) {
    const int x = state.geometry().coordinate(i);
    const int dist = std::abs(x - center);
    const double px = p[static_cast<std::size_t>(i)] / n2;
    if (dist <= options.exclude_radius || px <= options.min_probability) continue;
    if (options.max_radius && dist > *options.max_radius) continue;
    if (options.parity && ((x - center) % 2 + 2) % 2 != *options.parity) continue;
    r.push_back(dist);
    lp.push_back(std::log(px));
  }
  if (r.size() < 4) throw std::invalid_argument("fewer than 4 usable sites for a localization fit");
  const double n = static_cast<double>(r.size());
  const double mr = std::accumulate(r.begin(), r.end(), 0.0) / n;
  const double ml = std::accumulate(lp.begin(), lp.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    sxy += (r[i] - mr) * (lp[i] - ml);
    sxx += (r[i] - mr) * (r[i] - mr);
  }
  if (sxx == 0.0) throw std::invalid_argument("localization fit needs at least two distinct distances");
  LocalizationFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ml - fit.slope * mr;
  fit.sites = static_cast<int>(r.size());
  fit.exponential = std::abs(fit.slope) >= options.flat_slope;
  return fit;
}

bool in_window(double omega, double lo, double hi) {
  if (lo <= hi) return omega >= lo && omega <= hi;
  return omega >= lo || omega <= hi;
}

std::vector<std::size_t> gap_state_filter(const SpectralResult& result, double lo, double hi,
                                          std::optional<double> ipr_threshold) {
  std::vector<std::size_t> out;
  if (result.size() == 0) return out;
  const double threshold = ipr_threshold.value_or(2.0 / result.eigenvectors.front().size());
  for (std::size_t j = 0; j < result.size(); ++j) {
    if (in_window(result.quasienergies[j], lo, hi) && result.ipr[j] > threshold) out.push_back(j);
  }
  return out;
}

CoinField sweep_field(const SweepScenario& scenario, double theta_a) {
  switch (scenario.kind) {
    case Scenario::CycleTwoSegment:
      return CoinField::cycle_two_segment(scenario.size, scenario.segment, theta_a, scenario.theta_b,
                                          scenario.phases);
    case Scenario::Defect:
      return CoinField::defect(Geometry::cycle(scenario.size, -(scenario.size / 2)), theta_a,
                               scenario.theta_b, scenario.phases);
    default:
      throw std::invalid_argument("sweeps support the cycle-two-segment and defect scenarios");
  }
}

std::vector<SweepPoint> sweep_parameter(const SweepScenario& scenario, std::span<const double> grid,
                                        bool with_ipr) {
  std::vector<SweepPoint> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const CoinField field = sweep_field(scenario, grid[i]);
    SweepPoint& pt = out[i];
    pt.theta_a = grid[i];
    if (with_ipr) {
      DiagonalizeOptions opts;
      opts.fit_localization = false;
      auto res = diagonalize(field, opts);
      pt.quasienergies = std::move(res.quasienergies);
      pt.ipr = std::move(res.ipr);
    } else {
      pt.quasienergies = quasienergies(field);
    }
  });
  return out;
}

double pair_splitting(std::span<const double> quasienergies, double center) {
  if (quasienergies.size() < 2) throw std::invalid_argument("need at least two quasienergies");
  auto dist = [center](double w) { return std::abs(fold_angle(w - center)); };
  std::vector<double> w(quasienergies.begin(), quasienergies.end());
  std::partial_sort(w.begin(), w.begin() + 2, w.end(),
                    [&](double l, double r) { return dist(l) < dist(r); });
  return std::abs(fold_angle(w[0] - w[1]));
}

}  // namespace qwalk
