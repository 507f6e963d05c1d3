#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "marelay/experiment/runner.hpp"

namespace marelay::experiment {

inline constexpr std::string_view kSummaryHeader =
    "sweep_var,sweep_value,seed,scheme,T_total_s,T_u1_s,T_e1_s,T_c2_s,T_d2_s,rho,outer_iters,violation,wall_ms";
inline constexpr std::string_view kTraceHeader = "outer_iter,al_objective,T_total_s,violation,kappa";

/// Shortest decimal that round-trips; independent of the global locale.
std::string format_double(double value);

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_trace(std::ostream& out, const std::vector<pdd::TraceRow>& trace);

/// Throws std::runtime_error naming the path on any I/O failure.
void write_summary_file(const std::string& path, const std::vector<SummaryRow>& rows);
void write_trace_file(const std::string& path, const std::vector<pdd::TraceRow>& trace);

/// Splits one line on commas; the writers never quote.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace marelay::experiment
