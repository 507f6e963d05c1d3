#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "marelay/experiment/spec.hpp"

namespace marelay::experiment {

struct SummaryRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::pdd;
  double T_total_s = 0.0;
  double T_u1_s = 0.0;
  double T_e1_s = 0.0;
  double T_c2_s = 0.0;
  double T_d2_s = 0.0;
  double rho = 0.0;
  int outer_iters = 0;
  double violation = 0.0;
  double wall_ms = 0.0;
  bool converged = false;  ///< not emitted; drives the exit code
};

struct RunOptions {
  int threads = 1;
  /// Writes wall_ms as 0 so reruns are byte-identical.
  bool record_timing = true;
  /// Called once per finished trial, in completion order.
  std::function<void(const SummaryRow&)> progress;
};

struct RunResult {
  /// Sorted by sweep value index, then seed order, then scheme order.
  std::vector<SummaryRow> rows;
  /// First scheme at the first seed and first sweep value.
  std::vector<pdd::TraceRow> trace;
  int nonconverged = 0;
};

RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Solves one trial. Throws std::invalid_argument if the swept config is invalid.
pdd::SolveResult run_trial(const SystemConfig& config, std::uint64_t seed, Scheme scheme,
                           const pdd::SolveOptions& solver);

}  // namespace marelay::experiment
