#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "marelay/experiment/spec.hpp"

namespace marelay::experiment {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_u64(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool is_integer_var(std::string_view var) { return var == "K" || var == "N_b" || var == "N_t/N_r"; }

struct Context {
  int line = 0;
  std::string_view key;

  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError(line, std::string(key) + ": " + what);
  }
  double number(std::string_view value) const {
    const auto v = to_double(value);
    if (!v) fail("expected a number, got '" + std::string(value) + "'");
    return *v;
  }
  int integer(std::string_view value) const {
    const double v = number(value);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail("expected an integer, got '" + std::string(value) + "'");
    return static_cast<int>(v);
  }
  bool boolean(std::string_view value) const {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    fail("expected a boolean, got '" + std::string(value) + "'");
  }
};

using Setter = std::function<void(ExperimentSpec&, std::string_view, const Context&)>;

Setter int_field(int SystemConfig::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) { s.base.*field = c.integer(v); };
}
Setter real_field(double SystemConfig::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) { s.base.*field = c.number(v); };
}
Setter dbm_field(double SystemConfig::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) {
    s.base.*field = dbm_to_watts(c.number(v));
  };
}
Setter watt_field(double SystemConfig::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) {
    const double w = c.number(v);
    if (w < 0.0) c.fail("power must be nonnegative");
    s.base.*field = w;
  };
}
Setter noise_all(bool dbm) {
  return [dbm](ExperimentSpec& s, std::string_view v, const Context& c) {
    const double w = dbm ? dbm_to_watts(c.number(v)) : c.number(v);
    s.base.sigma2_r = s.base.sigma2_b = s.base.sigma2_d = w;
  };
}
Setter solver_real(double pdd::SolveOptions::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) { s.solver.*field = c.number(v); };
}
Setter solver_int(int pdd::SolveOptions::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) { s.solver.*field = c.integer(v); };
}
Setter solver_bool(bool pdd::SolveOptions::*field) {
  return [field](ExperimentSpec& s, std::string_view v, const Context& c) { s.solver.*field = c.boolean(v); };
}

using Table = std::map<std::string, std::map<std::string, Setter, std::less<>>, std::less<>>;

const Table& key_table() {
  static const Table table = [] {
    Table t;
    auto& sys = t["system"];
    sys["K"] = int_field(&SystemConfig::K);
    sys["N_u"] = int_field(&SystemConfig::N_u);
    sys["N_r"] = int_field(&SystemConfig::N_r);
    sys["N_t"] = int_field(&SystemConfig::N_t);
    sys["N_b"] = int_field(&SystemConfig::N_b);
    sys["L"] = int_field(&SystemConfig::L);
    sys["L_tilde"] = int_field(&SystemConfig::L_tilde);
    sys["L_bar"] = int_field(&SystemConfig::L_bar);
    sys["L_a_bits"] = real_field(&SystemConfig::L_a_bits);
    sys["F_local_bps"] = real_field(&SystemConfig::F_local_bps);
    sys["F_E_bps"] = real_field(&SystemConfig::F_E_bps);
    sys["alpha_comp"] = real_field(&SystemConfig::alpha_comp);
    sys["bandwidth_hz"] = real_field(&SystemConfig::bandwidth_hz);
    sys["P_k_dbm"] = dbm_field(&SystemConfig::P_k_w);
    sys["P_k_w"] = watt_field(&SystemConfig::P_k_w);
    sys["P_r_dbm"] = dbm_field(&SystemConfig::P_r_w);
    sys["P_r_w"] = watt_field(&SystemConfig::P_r_w);
    sys["sigma2_dbm"] = noise_all(true);
    sys["sigma2_w"] = noise_all(false);
    sys["sigma2_r_dbm"] = dbm_field(&SystemConfig::sigma2_r);
    sys["sigma2_r_w"] = watt_field(&SystemConfig::sigma2_r);
    sys["sigma2_b_dbm"] = dbm_field(&SystemConfig::sigma2_b);
    sys["sigma2_b_w"] = watt_field(&SystemConfig::sigma2_b);
    sys["sigma2_d_dbm"] = dbm_field(&SystemConfig::sigma2_d);
    sys["sigma2_d_w"] = watt_field(&SystemConfig::sigma2_d);
    sys["g0"] = real_field(&SystemConfig::g0);
    sys["path_loss_exp"] = real_field(&SystemConfig::path_loss_exp);
    sys["wavelength_m"] = real_field(&SystemConfig::wavelength_m);
    sys["region_side_m"] = real_field(&SystemConfig::region_side_m);
    sys["D_min_m"] = real_field(&SystemConfig::D_min_m);
    sys["h_r_m"] = real_field(&SystemConfig::h_r_m);
    sys["h_b_m"] = real_field(&SystemConfig::h_b_m);
    sys["ue_ring_radius_m"] = real_field(&SystemConfig::ue_ring_radius_m);
    sys["jammer_ring_radius_m"] = real_field(&SystemConfig::jammer_ring_radius_m);
    sys["relay_bs_distance_m"] = real_field(&SystemConfig::relay_bs_distance_m);
    sys["d2d_distance_m"] = real_field(&SystemConfig::d2d_distance_m);
    sys["ue_distance_m"] = [](ExperimentSpec& s, std::string_view v, const Context& c) {
      s.base.ue_distance_m = c.number(v);
    };

    auto& sol = t["solver"];
    sol["kappa0"] = solver_real(&pdd::SolveOptions::kappa0);
    sol["kappa_shrink"] = solver_real(&pdd::SolveOptions::kappa_shrink);
    sol["epsilon1"] = solver_real(&pdd::SolveOptions::epsilon1);
    sol["epsilon_decay"] = solver_real(&pdd::SolveOptions::epsilon_decay);
    sol["epsilon_final"] = solver_real(&pdd::SolveOptions::epsilon_final);
    sol["inner_tol"] = solver_real(&pdd::SolveOptions::inner_tol);
    sol["outer_tol"] = solver_real(&pdd::SolveOptions::outer_tol);
    sol["max_outer"] = solver_int(&pdd::SolveOptions::max_outer);
    sol["max_sweeps"] = solver_int(&pdd::SolveOptions::max_sweeps);
    sol["keep_best"] = solver_bool(&pdd::SolveOptions::keep_best);
    sol["position_search"] = solver_bool(&pdd::SolveOptions::position_search);

    auto& sw = t["sweep"];
    sw["variable"] = [](ExperimentSpec& s, std::string_view v, const Context& c) {
      if (!is_sweep_variable(v))
        c.fail("'" + std::string(v) + "' is not sweepable (K, F_local, F_E, region_side, P_r, ue_distance, N_b, N_t/N_r)");
      s.sweep_var = std::string(v);
    };
    sw["values"] = [](ExperimentSpec& s, std::string_view v, const Context& c) {
      s.sweep_values.clear();
      for (auto item : split(v, ',')) s.sweep_values.push_back(c.number(item));
    };

    auto& run = t["run"];
    run["schemes"] = [](ExperimentSpec& s, std::string_view v, const Context& c) {
      try {
        s.schemes = parse_scheme_list(v);
      } catch (const std::invalid_argument& e) {
        c.fail(e.what());
      }
    };
    run["seeds"] = [](ExperimentSpec& s, std::string_view v, const Context& c) {
      try {
        s.seeds = parse_seed_list(v);
      } catch (const std::invalid_argument& e) {
        c.fail(e.what());
      }
    };
    run["output_dir"] = [](ExperimentSpec& s, std::string_view v, const Context&) { s.output_dir = std::string(v); };
    return t;
  }();
  return table;
}

std::string unit_hint(const std::map<std::string, Setter, std::less<>>& keys, std::string_view key) {
  std::string hint;
  const std::string prefix = std::string(key) + "_";
  for (const auto& [name, setter] : keys) {
    if (name.rfind(prefix, 0) == 0) hint += (hint.empty() ? "" : ", ") + name;
  }
  return hint;
}

}  // namespace

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::pdd: return "pdd";
    case Scheme::fpa: return "fpa";
    case Scheme::local: return "local";
    case Scheme::full_offload: return "full_offload";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::pdd, Scheme::fpa, Scheme::local, Scheme::full_offload}) {
    if (name == scheme_name(s)) return s;
  }
  return std::nullopt;
}

SpecError::SpecError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

bool is_sweep_variable(std::string_view name) {
  static const std::set<std::string, std::less<>> names{"K", "F_local", "F_E", "region_side", "P_r", "ue_distance",
                                                        "N_b", "N_t/N_r"};
  return names.count(name) != 0;
}

void apply_sweep(SystemConfig& config, std::string_view var, double value) {
  if (is_integer_var(var) && value != std::floor(value))
    throw std::invalid_argument(std::string(var) + " takes integer values");
  if (var == "K") config.K = static_cast<int>(value);
  else if (var == "F_local") config.F_local_bps = value;
  else if (var == "F_E") config.F_E_bps = value;
  else if (var == "region_side") config.region_side_m = value;
  else if (var == "P_r") config.P_r_w = dbm_to_watts(value);
  else if (var == "ue_distance") config.ue_distance_m = value;
  else if (var == "N_b") config.N_b = static_cast<int>(value);
  else if (var == "N_t/N_r") config.N_t = config.N_r = static_cast<int>(value);
  else if (var != "none") throw std::invalid_argument("unknown sweep variable '" + std::string(var) + "'");
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (auto item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty seed list item");
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      const auto v = to_u64(item);
      if (!v) throw std::invalid_argument("bad seed '" + std::string(item) + "'");
      seeds.push_back(*v);
      continue;
    }
    const auto lo = to_u64(item.substr(0, dash));
    const auto hi = to_u64(item.substr(dash + 1));
    if (!lo || !hi || *hi < *lo || *hi - *lo >= 100000)
      throw std::invalid_argument("bad seed range '" + std::string(item) + "'");
    for (auto s = *lo; s <= *hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

std::vector<Scheme> parse_scheme_list(std::string_view text) {
  std::vector<Scheme> schemes;
  for (auto item : split(text, ',')) {
    const auto s = parse_scheme(item);
    if (!s) throw std::invalid_argument("unknown scheme '" + std::string(item) + "' (pdd, fpa, local, full_offload)");
    if (std::find(schemes.begin(), schemes.end(), *s) != schemes.end())
      throw std::invalid_argument("scheme '" + std::string(item) + "' listed twice");
    schemes.push_back(*s);
  }
  return schemes;
}

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  spec.seeds = {1};
  const auto& table = key_table();
  std::string section;
  std::set<std::string> seen;
  int values_line = 0;
  std::string raw;
  Context ctx;
  while (std::getline(in, raw)) {
    ++ctx.line;
    std::string_view line = raw;
    line = trim(line.substr(0, std::min(line.find('#'), line.find(';'))));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SpecError(ctx.line, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!table.count(section)) throw SpecError(ctx.line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw SpecError(ctx.line, "expected 'key = value'");
    if (section.empty()) throw SpecError(ctx.line, "key outside of any section");
    ctx.key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto& keys = table.find(section)->second;
    const auto it = keys.find(ctx.key);
    if (it == keys.end()) {
      const auto hint = unit_hint(keys, ctx.key);
      if (!hint.empty()) ctx.fail("missing unit suffix; use one of " + hint);
      ctx.fail("unknown key in [" + section + "]");
    }
    if (value.empty()) ctx.fail("empty value");
    if (!seen.insert(section + "." + std::string(ctx.key)).second) ctx.fail("duplicate key");
    it->second(spec, value, ctx);
    if (section == "sweep" && ctx.key == "values") values_line = ctx.line;
  }

  const bool has_var = seen.count("sweep.variable") != 0;
  const bool has_values = seen.count("sweep.values") != 0;
  if (has_var != has_values) throw SpecError(0, "[sweep] needs both 'variable' and 'values'");
  try {
    spec.base.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(0, std::string("invalid [system]: ") + e.what());
  }
  for (double v : spec.sweep_values) {
    SystemConfig swept = spec.base;
    try {
      apply_sweep(swept, spec.sweep_var, v);
      swept.validate();
    } catch (const std::invalid_argument& e) {
      std::ostringstream msg;
      msg << "values: sweep value " << v << " gives an invalid config: " << e.what();
      throw SpecError(values_line, msg.str());
    }
  }
  if (spec.solver.max_outer < 1) throw SpecError(0, "max_outer must be at least 1");
  return spec;
}

ExperimentSpec parse_spec_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_spec(in);
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, "cannot open " + path);
  return parse_spec(in);
}

}  // namespace marelay::experiment
