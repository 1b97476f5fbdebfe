#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qwalk/geometry.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

/// Conditional shift S: a_x -> x+1, b_x -> x-1, cyclically.
WalkerState apply_step(const WalkerState& state);

/// Sitewise coin C = sum_x |x><x| (x) C_x.
WalkerState apply_coin(const WalkerState& state, const CoinField& field);

/// One step U = S C, done in place without temporaries beyond one buffer.
void step_in_place(Eigen::VectorXcd& psi, const CoinField& field, Eigen::VectorXcd& scratch);

/// Largest amplitude magnitude that would cross the seam between the two end
/// sites of a wire after coining (the a component leaving x_max and the b
/// component leaving x_min).
double seam_leak(const Eigen::VectorXcd& coined, int size);

using Trajectory = std::vector<std::vector<double>>;

struct EvolveOptions {
  /// Record site probabilities at t = 0..steps (inclusive).
  bool record_trajectory = false;
  double seam_tolerance = 1e-13;
};

struct EvolveResult {
  WalkerState state;
  Trajectory trajectory;
};

/// Applies U `steps` times. Throws HorizonExceeded for a truncated line pushed past
/// its horizon and SeamLeak if amplitude crosses a wire's seam.
EvolveResult evolve(const WalkerState& state, const CoinField& field, int steps,
                    const EvolveOptions& options = {});

/// Called with t = 0..steps and the state at that time.
using StepObserver = std::function<void(int t, const WalkerState& state)>;

/// Same checks as evolve(), reporting every intermediate state to `observer`.
WalkerState evolve_observed(const WalkerState& state, const CoinField& field, int steps,
                            const StepObserver& observer, const EvolveOptions& options = {});

WalkerState evolve_state(const WalkerState& state, const CoinField& field, int steps);

}  // namespace qwalk
