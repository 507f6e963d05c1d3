#pragma once

#include "marelay/pdd/state.hpp"
#include "marelay/pdd/subproblems.hpp"
#include "marelay/surrogate.hpp"

namespace marelay::pdd {

struct BlockOptions {
  MultiplierSearch search;
  /// false: replace C <= log2(1 + eta) with its tangent at the current eta.
  bool exact_rate_bound = true;
  RateTangentForm tangent_form = RateTangentForm::corrected;
};

/// Each update minimizes the augmented Lagrangian over its variable group with
/// everything else fixed. Order of one sweep is the order of declaration.

/// Power-constrained copies F~, w^, w-bar.
void update_power_copies(const PddProblem& p, PddState& s, const BlockOptions& o);
/// Unit-modulus copies of the field-response matrices, entrywise.
void update_field_responses(const PddProblem& p, PddState& s, const BlockOptions& o);
/// Offload ratio and latency copies under the product bounds, then rho and t_ck.
void update_latency_copies(const PddProblem& p, PddState& s, const BlockOptions& o);
/// Antenna difference copies under the linearized spacing bound.
void update_distance_copies(const PddProblem& p, PddState& s, const BlockOptions& o);
/// Relay combiner outputs and uplink SINR copies.
void update_uplink_sinr(const PddProblem& p, PddState& s, const BlockOptions& o);
/// F, w, mu, v_b, omega, latency sums and rates.
void update_primal(const PddProblem& p, PddState& s, const BlockOptions& o);
/// Antenna positions, one antenna at a time.
void update_positions(const PddProblem& p, PddState& s, const BlockOptions& o);
/// D2D transmit beams, relay receive fields and relay transmit fields.
void update_links(const PddProblem& p, PddState& s, const BlockOptions& o);
/// BS combiners under the uplink SINR budget.
void update_bs_combiners(const PddProblem& p, PddState& s, const BlockOptions& o);
/// D2D received fields and SINR copies.
void update_d2d_sinr(const PddProblem& p, PddState& s, const BlockOptions& o);

}  // namespace marelay::pdd
