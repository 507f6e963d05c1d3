#pragma once

#include <cstdint>

#include "marelay/pdd/state.hpp"
#include "marelay/scenario.hpp"

namespace marelay::testing {

/// Reference scenario at 10 MHz.
SystemConfig reference_config();

/// K = 1, one antenna everywhere, single uplink and relay paths.
SystemConfig tiny_config();

/// Small but fully coupled system for block-level tests.
SystemConfig small_config();

/// Solver start for the instance with every auxiliary, dual and the penalty
/// perturbed at random; FRM copies stay unit modulus.
pdd::PddState random_state(const pdd::PddProblem& p, const ScenarioInstance& inst, std::uint64_t seed,
                           double scale = 0.3);

}  // namespace marelay::testing
