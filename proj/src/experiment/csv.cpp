#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "marelay/experiment/csv.hpp"

namespace marelay::experiment {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf.data(), ptr);
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.sweep_var << ',' << format_double(r.sweep_value) << ',' << r.seed << ',' << scheme_name(r.scheme) << ','
        << format_double(r.T_total_s) << ',' << format_double(r.T_u1_s) << ',' << format_double(r.T_e1_s) << ','
        << format_double(r.T_c2_s) << ',' << format_double(r.T_d2_s) << ',' << format_double(r.rho) << ','
        << r.outer_iters << ',' << format_double(r.violation) << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_trace(std::ostream& out, const std::vector<pdd::TraceRow>& trace) {
  out << kTraceHeader << '\n';
  for (const auto& t : trace) {
    out << t.outer_iter << ',' << format_double(t.al_objective) << ',' << format_double(t.T_total_s) << ','
        << format_double(t.violation) << ',' << format_double(t.kappa) << '\n';
  }
}

namespace {

template <typename Rows, typename Writer>
void write_file(const std::string& path, const Rows& rows, Writer writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  writer(out, rows);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

void write_summary_file(const std::string& path, const std::vector<SummaryRow>& rows) {
  write_file(path, rows, [](std::ostream& o, const auto& r) { write_summary(o, r); });
}

void write_trace_file(const std::string& path, const std::vector<pdd::TraceRow>& trace) {
  write_file(path, trace, [](std::ostream& o, const auto& t) { write_trace(o, t); });
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace marelay::experiment
