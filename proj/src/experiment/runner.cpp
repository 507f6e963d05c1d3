#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "marelay/baselines.hpp"
#include "marelay/experiment/runner.hpp"

namespace marelay::experiment {

pdd::SolveResult run_trial(const SystemConfig& config, std::uint64_t seed, Scheme scheme,
                           const pdd::SolveOptions& solver) {
  config.validate();
  const auto instance = build_scenario(config, seed);
  switch (scheme) {
    case Scheme::pdd: return pdd::solve(instance, solver);
    case Scheme::fpa: return solve_fpa(instance, solver);
    case Scheme::local: return solve_local_only(instance, solver);
    case Scheme::full_offload: return solve_full_offload(instance, solver);
  }
  throw std::invalid_argument("unknown scheme");
}

RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  const std::size_t n_values = spec.sweep_values.size();
  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t n_schemes = spec.schemes.size();
  const std::size_t n_jobs = n_values * n_seeds * n_schemes;

  RunResult result;
  result.rows.resize(n_jobs);
  std::vector<std::exception_ptr> errors(n_jobs);
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;

  // Job j = (value, seed, scheme) in row-major order, so the buffer is already sorted.
  auto worker = [&] {
    for (std::size_t j = next++; j < n_jobs; j = next++) {
      const std::size_t vi = j / (n_seeds * n_schemes);
      const std::size_t si = (j / n_schemes) % n_seeds;
      const std::size_t ci = j % n_schemes;
      try {
        SystemConfig config = spec.base;
        apply_sweep(config, spec.sweep_var, spec.sweep_values[vi]);
        const auto start = std::chrono::steady_clock::now();
        auto solved = run_trial(config, spec.seeds[si], spec.schemes[ci], spec.solver);
        const auto stop = std::chrono::steady_clock::now();

        SummaryRow& row = result.rows[j];
        const auto& sol = solved.solution;
        const auto& lat = sol.evaluation.latency;
        row.sweep_var = spec.sweep_var;
        row.sweep_value = spec.sweep_values[vi];
        row.seed = spec.seeds[si];
        row.scheme = spec.schemes[ci];
        row.T_total_s = lat.T_total;
        row.T_u1_s = lat.T_u1;
        row.T_e1_s = lat.T_e1;
        row.T_c2_s = lat.T_c2;
        row.T_d2_s = lat.T_d2;
        row.rho = sol.rho;
        row.outer_iters = sol.outer_iters;
        row.violation = sol.violation;
        row.converged = sol.converged;
        row.wall_ms =
            options.record_timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
        if (j == 0) result.trace = std::move(solved.trace);
        if (options.progress) {
          std::lock_guard lock(progress_mutex);
          options.progress(row);
        }
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(n_jobs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.nonconverged = static_cast<int>(
      std::count_if(result.rows.begin(), result.rows.end(), [](const SummaryRow& r) { return !r.converged; }));
  return result;
}

}  // namespace marelay::experiment
