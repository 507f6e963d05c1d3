#pragma once

#include <functional>
#include <vector>

#include "marelay/pdd/blocks.hpp"
#include "marelay/pdd/position_search.hpp"
#include "marelay/pdd/state.hpp"
#include "marelay/scenario.hpp"
#include "marelay/system.hpp"

namespace marelay::pdd {

/// Called after every block update with the AL objective before and after it.
using BlockObserver = std::function<void(int block, double before, double after)>;

struct SolveOptions {
  double kappa0 = 2.0;
  double kappa_shrink = 0.6;
  double kappa_floor = 1e-12;
  double epsilon1 = 0.1;
  double epsilon_decay = 0.7;
  double epsilon_final = 1e-3;
  int max_outer = 100;
  int max_sweeps = 30;
  double inner_tol = 1e-5;  ///< relative AL change
  double outer_tol = 1e-4;  ///< relative AL change between outer iterations
  /// Return the lowest-latency polished iterate rather than the last one.
  bool keep_best = true;
  /// Finish with a compass search over positions on the exact latency.
  bool position_search = true;
  PositionSearchOptions search;
  BlockOptions blocks;
  BlockObserver observer;
};

struct TraceRow {
  int outer_iter = 0;
  int inner_sweeps = 0;
  double al_objective = 0.0;
  double T_total_s = 0.0;
  double violation = 0.0;
  double kappa = 0.0;
};

struct Solution {
  MAPositions positions;
  Beamformers beams;
  double rho = 0.0;
  Evaluation evaluation;
  double violation = 0.0;
  bool converged = false;
  int outer_iters = 0;
};

struct SolveResult {
  Solution solution;
  std::vector<TraceRow> trace;
  PddState state;  ///< state at termination, before the final polish
};

inline constexpr int kBlockCount = 10;
const char* block_name(int block);

/// Runs the block sequence until the relative AL change drops below inner_tol.
/// Returns the number of sweeps.
int inner_loop(const PddProblem& p, PddState& s, const SolveOptions& opts);

/// Dual ascent when the violation is within epsilon1, otherwise penalty shrink;
/// then tightens epsilon1.
void outer_step(const PddProblem& p, PddState& s, const SolveOptions& opts);

/// Starts from the instance's initial positions and full-power beams.
SolveResult solve(const ScenarioInstance& instance, const SolveOptions& opts = {}, const ModelSwitches& switches = {});

/// Latency of a primal design from its true rates, seconds.
double primal_total_latency(const PddProblem& p, const Primal& x);

}  // namespace marelay::pdd
