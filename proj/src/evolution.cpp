#include "qwalk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void check_field(const WalkerState& state, const CoinField& field) {
  if (!(state.geometry() == field.geometry())) throw GeometryMismatch();
}

void coin_pass(Eigen::VectorXcd& psi, const CoinField& field) {
  const int n = field.geometry().size();
  for (int i = 0; i < n; ++i) {
    const Coin2& c = field.matrix(i);
    const cplx a = psi[2 * i];
    const cplx b = psi[2 * i + 1];
    psi[2 * i] = c(0, 0) * a + c(0, 1) * b;
    psi[2 * i + 1] = c(1, 0) * a + c(1, 1) * b;
  }
}

void shift_pass(const Eigen::VectorXcd& in, Eigen::VectorXcd& out, int n) {
  for (int i = 0; i < n; ++i) {
    const int right = (i + 1 == n) ? 0 : i + 1;
    const int left = (i == 0) ? n - 1 : i - 1;
    out[2 * right] = in[2 * i];
    out[2 * left + 1] = in[2 * i + 1];
  }
}

}  // namespace

WalkerState apply_step(const WalkerState& state) {
  WalkerState out(state.geometry());
  shift_pass(state.vector(), out.vector(), state.size());
  return out;
}

WalkerState apply_coin(const WalkerState& state, const CoinField& field) {
  check_field(state, field);
  WalkerState out = state;
  coin_pass(out.vector(), field);
  return out;
}

void step_in_place(Eigen::VectorXcd& psi, const CoinField& field, Eigen::VectorXcd& scratch) {
  const int n = field.geometry().size();
  scratch.resize(psi.size());
  coin_pass(psi, field);
  shift_pass(psi, scratch, n);
  psi.swap(scratch);
}

double seam_leak(const Eigen::VectorXcd& coined, int size) {
  return std::max(std::abs(coined[2 * (size - 1)]), std::abs(coined[1]));
}

WalkerState evolve_observed(const WalkerState& state, const CoinField& field, int steps,
                            const StepObserver& observer, const EvolveOptions& options) {
  check_field(state, field);
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  const Geometry& g = field.geometry();
  if (g.kind() == GeometryKind::TruncatedLine && steps > g.horizon()) {
    throw HorizonExceeded("requested " + std::to_string(steps) + " steps on a line truncated for " +
                          std::to_string(g.horizon()));
  }
  const bool wire = g.kind() == GeometryKind::Wire;
  const int n = g.size();

  WalkerState current = state;
  Eigen::VectorXcd& psi = current.vector();
  Eigen::VectorXcd scratch(psi.size());
  if (observer) observer(0, current);
  for (int t = 0; t < steps; ++t) {
    coin_pass(psi, field);
    if (wire) {
      const double leak = seam_leak(psi, n);
      if (leak > options.seam_tolerance) {
        throw SeamLeak("amplitude " + std::to_string(leak) + " crossed the wire seam at step " +
                       std::to_string(t + 1));
      }
    }
    shift_pass(psi, scratch, n);
    psi.swap(scratch);
    if (observer) observer(t + 1, current);
  }
  return current;
}

EvolveResult evolve(const WalkerState& state, const CoinField& field, int steps,
                    const EvolveOptions& options) {
  EvolveResult result{state, {}};
  StepObserver record;
  if (options.record_trajectory) {
    result.trajectory.reserve(static_cast<std::size_t>(std::max(steps, 0)) + 1);
    record = [&](int, const WalkerState& s) { result.trajectory.push_back(s.site_probabilities()); };
  }
  result.state = evolve_observed(state, field, steps, record, options);
  return result;
}

WalkerState evolve_state(const WalkerState& state, const CoinField& field, int steps) {
  return evolve(state, field, steps).state;
}

}  // namespace qwalk
