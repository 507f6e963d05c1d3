#pragma once

#include <vector>

#include "marelay/pdd/problem.hpp"

namespace marelay::pdd {

/// Compass search over antenna positions on the exact latency, beams held
/// fixed and rho re-optimized at every trial. Moves one antenna at a time by
/// each step (wavelengths) along the 8 compass directions, keeping the first
/// improvement, and halves the step once a full pass finds nothing.
struct PositionSearchOptions {
  std::vector<double> steps{0.25, 0.125, 0.0625};
  int max_evaluations = 50000;
};

struct PositionSearchResult {
  Primal x;
  double T = 0.0;  ///< solver time units
  int evaluations = 0;
};

PositionSearchResult search_positions(const PddProblem& p, const Primal& start, const PositionSearchOptions& opts = {});

/// Exact latency of a design with rho chosen optimally for its true rates.
double best_rho_latency(const PddProblem& p, const Primal& x);

}  // namespace marelay::pdd
