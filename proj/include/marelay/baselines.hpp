#pragma once

#include "marelay/pdd/solver.hpp"

namespace marelay {

/// Same solver with every antenna held at its initial grid position.
pdd::SolveResult solve_fpa(const ScenarioInstance& instance, const pdd::SolveOptions& opts = {});

/// rho = 0: the whole task is computed locally and the results go over D2D.
/// T_total counts only the D2D delivery; the local compute time is reported
/// in T_c2 but does not enter the total.
pdd::SolveResult solve_local_only(const ScenarioInstance& instance, const pdd::SolveOptions& opts = {});

/// rho = 1: the whole task is offloaded to the edge server.
pdd::SolveResult solve_full_offload(const ScenarioInstance& instance, const pdd::SolveOptions& opts = {});

}  // namespace marelay
