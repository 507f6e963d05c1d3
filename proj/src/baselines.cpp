#include "marelay/baselines.hpp"

namespace marelay {

pdd::SolveResult solve_fpa(const ScenarioInstance& instance, const pdd::SolveOptions& opts) {
  pdd::ModelSwitches sw;
  sw.positions_frozen = true;
  return pdd::solve(instance, opts, sw);
}

pdd::SolveResult solve_local_only(const ScenarioInstance& instance, const pdd::SolveOptions& opts) {
  pdd::ModelSwitches sw;
  sw.fixed_rho = 0.0;
  sw.enforce_local_time = false;
  return pdd::solve(instance, opts, sw);
}

pdd::SolveResult solve_full_offload(const ScenarioInstance& instance, const pdd::SolveOptions& opts) {
  pdd::ModelSwitches sw;
  sw.fixed_rho = 1.0;
  return pdd::solve(instance, opts, sw);
}

}  // namespace marelay
