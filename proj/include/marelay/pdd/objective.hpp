#pragma once

#include "marelay/pdd/state.hpp"

namespace marelay::pdd {

/// Left side minus right side of every equality coupling, e.g. rho - rho_hat,
/// mu_k - B_k w_k, A(v) - B.
ConsensusVector residuals(const PddProblem& p, const PddState& s);

/// t_u + t_d + (1/2kappa) sum |r + kappa lambda|^2.
double al_objective(const PddProblem& p, const PddState& s);
/// sum |r + kappa lambda|^2, without the 1/(2 kappa) factor.
double al_penalty(const ConsensusVector& r, const DualVariables& dual, double kappa);

/// Largest absolute residual (complex entries by modulus).
double constraint_violation(const PddProblem& p, const PddState& s);
double max_abs_entry(const ConsensusVector& r);

/// lambda += r / kappa for every coupling.
void dual_ascent(const ConsensusVector& r, double kappa, DualVariables& dual);

}  // namespace marelay::pdd
