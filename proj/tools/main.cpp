#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "marelay/experiment/csv.hpp"
#include "marelay/experiment/runner.hpp"
#include "marelay/experiment/spec.hpp"

namespace {

constexpr int kExitSpecError = 2;
constexpr int kExitNonconverged = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace marelay::experiment;

  CLI::App app{"Movable-antenna relay D2D MEC latency experiments"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string seeds;
  std::string out_dir;
  std::string schemes;
  int max_outer = 0;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool allow_nonconverged = false;
  bool no_timing = false;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run every (sweep value, seed, scheme) trial of a spec file");
  run->add_option("spec", spec_path, "Experiment spec file")->required();
  run->add_option("--seeds", seeds, "Override seeds, e.g. 1-10 or 1,4,9");
  run->add_option("--out", out_dir, "Override the output directory");
  run->add_option("--max-outer", max_outer, "Override the outer iteration cap")->check(CLI::PositiveNumber);
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--scheme", schemes, "Override schemes: pdd, fpa, local, full_offload (comma-separated)");
  run->add_flag("--allow-nonconverged", allow_nonconverged, "Exit 0 even if some trial did not converge");
  run->add_flag("--no-timing", no_timing, "Write wall_ms as 0 for byte-identical reruns");
  run->add_flag("-q,--quiet", quiet, "No per-trial progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSpecError;
  }

  ExperimentSpec spec;
  try {
    spec = parse_spec_file(spec_path);
    if (!seeds.empty()) spec.seeds = parse_seed_list(seeds);
    if (!schemes.empty()) spec.schemes = parse_scheme_list(schemes);
  } catch (const SpecError& e) {
    std::cerr << spec_path << ": " << e.what() << '\n';
    return kExitSpecError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpecError;
  }
  if (!out_dir.empty()) spec.output_dir = out_dir;
  if (max_outer > 0) spec.solver.max_outer = max_outer;

  RunOptions options;
  options.threads = threads;
  options.record_timing = !no_timing;
  if (!quiet) {
    options.progress = [](const SummaryRow& r) {
      std::cerr << r.sweep_var << '=' << format_double(r.sweep_value) << " seed=" << r.seed << ' '
                << scheme_name(r.scheme) << " T=" << format_double(r.T_total_s) << " iters=" << r.outer_iters
                << (r.converged ? "" : " NONCONVERGED") << '\n';
    };
  }

  try {
    const auto result = run_experiment(spec, options);
    std::filesystem::create_directories(spec.output_dir);
    const auto dir = std::filesystem::path(spec.output_dir);
    write_summary_file((dir / "summary.csv").string(), result.rows);
    write_trace_file((dir / "trace.csv").string(), result.trace);
    if (result.nonconverged > 0) {
      std::cerr << result.nonconverged << " of " << result.rows.size() << " trials did not converge\n";
      if (!allow_nonconverged) return kExitNonconverged;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
