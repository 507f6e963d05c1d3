#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "marelay/pdd/solver.hpp"
#include "marelay/scenario.hpp"

namespace marelay::experiment {

enum class Scheme { pdd, fpa, local, full_offload };

const char* scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Parse failure anchored to a 1-based line; line 0 refers to the whole file.
class SpecError : public std::runtime_error {
 public:
  SpecError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// One experiment: every (sweep value, seed, scheme) triple is one trial.
struct ExperimentSpec {
  SystemConfig base;
  pdd::SolveOptions solver;
  std::string sweep_var = "none";
  std::vector<double> sweep_values{0.0};  ///< a single placeholder when sweep_var is "none"
  std::vector<Scheme> schemes{Scheme::pdd};
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";
};

/// Whitelist: K, F_local, F_E, region_side, P_r, ue_distance, N_b, N_t/N_r.
bool is_sweep_variable(std::string_view name);

/// Sets the swept field. P_r values are in dBm, ue_distance and region_side in
/// meters, F_local and F_E in bit/s; N_t/N_r sets both relay arrays.
void apply_sweep(SystemConfig& config, std::string_view var, double value);

/// Comma-separated list whose items are integers or inclusive ranges "a-b".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);
std::vector<Scheme> parse_scheme_list(std::string_view text);

/// INI-style text: [system], [solver], [sweep] and [run] sections of key = value
/// lines; '#' and ';' start comments. Dimensioned keys carry a unit suffix and
/// powers may be given in dBm or W.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec parse_spec_string(std::string_view text);
ExperimentSpec parse_spec_file(const std::string& path);

}  // namespace marelay::experiment
