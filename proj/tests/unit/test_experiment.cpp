#include <sstream>
#include <string>

#include "doctest.h"
#include "marelay/experiment/csv.hpp"
#include "marelay/experiment/runner.hpp"
#include "marelay/experiment/spec.hpp"

using namespace marelay;
using namespace marelay::experiment;

namespace {

int error_line(const std::string& text) {
  try {
    parse_spec_string(text);
  } catch (const SpecError& e) {
    return e.line();
  }
  return -1;
}

std::string error_message(const std::string& text) {
  try {
    parse_spec_string(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return {};
}

const char* kSmall = R"(
[system]
K = 2
N_u = 2
N_r = 2
N_t = 2
N_b = 3
L_tilde = 3
bandwidth_hz = 1e7

[solver]
max_outer = 30

[sweep]
variable = F_E
values = 1e7, 1e8

[run]
schemes = pdd, local
seeds = 1-2
)";

}  // namespace

TEST_CASE("spec parsing: values, units and defaults") {
  const auto spec = parse_spec_string(
      "[system]\nK = 3\nP_k_dbm = 20\nP_r_w = 0.5\nsigma2_dbm = -80\nF_E_bps = 2e8\n"
      "[solver]\nmax_outer = 12\nkeep_best = false\n");
  CHECK(spec.base.K == 3);
  CHECK(spec.base.P_k_w == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(spec.base.P_r_w == 0.5);
  CHECK(spec.base.sigma2_r == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(spec.base.sigma2_b == spec.base.sigma2_r);
  CHECK(spec.base.sigma2_d == spec.base.sigma2_r);
  CHECK(spec.base.F_E_bps == 2e8);
  CHECK(spec.solver.max_outer == 12);
  CHECK_FALSE(spec.solver.keep_best);
  CHECK(spec.sweep_var == "none");
  CHECK(spec.sweep_values.size() == 1);
  CHECK(spec.seeds == std::vector<std::uint64_t>{1});
  CHECK(spec.schemes == std::vector<Scheme>{Scheme::pdd});
}

TEST_CASE("spec parsing: errors carry line numbers") {
  CHECK(error_line("[system]\nK = 2\nF_E = 1e8\n") == 3);
  CHECK(error_message("[system]\nK = 2\nF_E = 1e8\n").find("missing unit suffix") != std::string::npos);
  CHECK(error_line("[system]\nK = 2\nK = 3\n") == 3);
  CHECK(error_line("\n[nope]\n") == 2);
  CHECK(error_line("[system]\nbogus = 1\n") == 2);
  CHECK(error_line("K = 1\n") == 1);
  CHECK(error_line("[system]\nK = two\n") == 2);
  CHECK(error_line("[sweep]\nvariable = K\n") == 0);
  CHECK(error_line("[sweep]\nvariable = alpha\nvalues = 1\n") == 2);
  CHECK(error_line("[sweep]\nvariable = K\n\nvalues = 2, 0\n") == 4);
  CHECK(error_line("[sweep]\nvariable = K\nvalues = 2.5\n") == 3);
  CHECK(error_line("[system]\nK = 0\n") >= 0);
  CHECK(error_message("[system]\nK = 2\nF_E = 1e8\n").rfind("line 3: ", 0) == 0);
}

TEST_CASE("seed and scheme lists") {
  CHECK(parse_seed_list("1-3,7") == std::vector<std::uint64_t>{1, 2, 3, 7});
  CHECK(parse_seed_list("5") == std::vector<std::uint64_t>{5});
  CHECK_THROWS_AS(parse_seed_list("3-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed_list("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed_list("1,,2"), std::invalid_argument);
  CHECK(parse_scheme_list("fpa, pdd") == std::vector<Scheme>{Scheme::fpa, Scheme::pdd});
  CHECK_THROWS_AS(parse_scheme_list("pdd,pdd"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scheme_list("magic"), std::invalid_argument);
  for (Scheme s : {Scheme::pdd, Scheme::fpa, Scheme::local, Scheme::full_offload})
    CHECK(parse_scheme(scheme_name(s)) == s);
}

TEST_CASE("sweep whitelist and application") {
  for (const char* v : {"K", "F_local", "F_E", "region_side", "P_r", "ue_distance", "N_b", "N_t/N_r"})
    CHECK(is_sweep_variable(v));
  CHECK_FALSE(is_sweep_variable("alpha_comp"));
  SystemConfig c;
  apply_sweep(c, "P_r", 20.0);
  CHECK(c.P_r_w == doctest::Approx(0.1).epsilon(1e-15));
  apply_sweep(c, "N_t/N_r", 6.0);
  CHECK(c.N_t == 6);
  CHECK(c.N_r == 6);
  apply_sweep(c, "ue_distance", 40.0);
  CHECK(c.ue_distance_m == 40.0);
  CHECK_THROWS_AS(apply_sweep(c, "K", 2.5), std::invalid_argument);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.75}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV writers") {
  std::ostringstream empty;
  write_summary(empty, {});
  CHECK(empty.str() == std::string(kSummaryHeader) + "\n");

  SummaryRow row;
  row.sweep_var = "F_E";
  row.sweep_value = 1e8;
  row.seed = 4;
  row.scheme = Scheme::fpa;
  row.T_u1_s = 0.1;
  row.T_e1_s = 0.2;
  row.T_d2_s = 0.3;
  row.T_total_s = row.T_u1_s + std::max(row.T_e1_s, row.T_d2_s);
  row.T_c2_s = 1.7;
  row.rho = 0.3;
  row.outer_iters = 17;
  row.violation = 4.5e-4;
  std::ostringstream out;
  write_summary(out, {row});
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header == kSummaryHeader);
  const auto f = split_csv_line(line);
  REQUIRE(f.size() == 13);
  CHECK(f[0] == "F_E");
  CHECK(f[2] == "4");
  CHECK(f[3] == "fpa");
  CHECK(f[10] == "17");
  CHECK(std::stod(f[4]) == std::stod(f[5]) + std::max(std::stod(f[6]), std::stod(f[8])));

  std::ostringstream trace;
  write_trace(trace, {{1, 3, 2.5, 1.5, 0.01, 2.0}});
  CHECK(trace.str() == std::string(kTraceHeader) + "\n1,2.5,1.5,0.01,2\n");
  CHECK(split_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
  CHECK_THROWS(write_summary_file("/nonexistent-dir/x.csv", {}));
}

TEST_CASE("runner: cardinality, ordering and determinism") {
  const auto spec = parse_spec_string(kSmall);
  RunOptions one;
  one.record_timing = false;
  const auto a = run_experiment(spec, one);
  REQUIRE(a.rows.size() == 2 * 2 * 2);
  std::size_t i = 0;
  for (double v : {1e7, 1e8})
    for (std::uint64_t seed : {1u, 2u})
      for (Scheme s : {Scheme::pdd, Scheme::local}) {
        CHECK(a.rows[i].sweep_value == v);
        CHECK(a.rows[i].seed == seed);
        CHECK(a.rows[i].scheme == s);
        CHECK(a.rows[i].wall_ms == 0.0);
        CHECK(a.rows[i].T_total_s == a.rows[i].T_u1_s + std::max(a.rows[i].T_e1_s, a.rows[i].T_d2_s));
        ++i;
      }
  CHECK(static_cast<int>(a.trace.size()) == a.rows[0].outer_iters);

  RunOptions three = one;
  three.threads = 3;
  int progress = 0;
  three.progress = [&](const SummaryRow&) { ++progress; };
  const auto b = run_experiment(spec, three);
  CHECK(progress == 8);
  std::ostringstream sa, sb;
  write_summary(sa, a.rows);
  write_summary(sb, b.rows);
  CHECK(sa.str() == sb.str());
  CHECK(a.nonconverged == b.nonconverged);
}

TEST_CASE("run_trial rejects an invalid config") {
  SystemConfig c;
  c.K = 0;
  CHECK_THROWS_AS(run_trial(c, 1, Scheme::pdd, {}), std::invalid_argument);
}
