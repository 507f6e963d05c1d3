#include "marelay/pdd/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "marelay/pdd/objective.hpp"
#include "marelay/pdd/position_search.hpp"
#include "marelay/pdd/subproblems.hpp"

namespace marelay::pdd {

namespace {

using BlockFn = void (*)(const PddProblem&, PddState&, const BlockOptions&);

constexpr std::array<BlockFn, kBlockCount> kBlocks = {
    update_power_copies, update_field_responses, update_latency_copies, update_distance_copies,
    update_uplink_sinr,  update_primal,          update_positions,      update_links,
    update_bs_combiners, update_d2d_sinr,
};

constexpr std::array<const char*, kBlockCount> kBlockNames = {
    "power_copies", "field_responses", "latency_copies", "distance_copies", "uplink_sinr",
    "primal",       "positions",       "links",          "bs_combiners",    "d2d_sinr",
};

double relative_change(double before, double after) {
  return std::abs(after - before) / std::max(1.0, std::abs(before));
}

/// Pushes too-close antennas apart and clamps them into the region. Returns
/// false when the spacing could not be restored.
bool repair_spacing(Coords& v, double half, double d_min) {
  const auto pairs = antenna_pairs(static_cast<int>(v.cols()));
  for (int pass = 0; pass < 200; ++pass) {
    bool moved = false;
    for (auto [i, j] : pairs) {
      Vec2 d = v.col(i) - v.col(j);
      const double n = d.norm();
      if (n >= d_min) continue;
      const Vec2 dir = n > 0.0 ? Vec2(d / n) : Vec2(1.0, 0.0);
      const double push = 0.5 * (d_min - n) * (1.0 + 1e-9);
      v.col(i) += push * dir;
      v.col(j) -= push * dir;
      moved = true;
    }
    v = v.cwiseMax(-half).cwiseMin(half);
    if (!moved) return true;
  }
  return v.cols() < 2 || min_pairwise_distance(v) >= d_min;
}

/// Feasible design from an iterate: beams projected onto their power balls,
/// spacing repaired (or reset to the start), rho re-optimized on true rates.
Primal polish(const PddProblem& p, const Primal& iterate, const Primal& start) {
  Primal x = iterate;
  for (auto& w : x.w) w = project_ball(w, std::sqrt(p.P_ue));
  for (auto& w : x.w_d2d) w = project_ball(w, std::sqrt(p.P_ue));
  x.F = project_ball(x.F, std::sqrt(p.P_relay));
  for (int a = 0; a < p.array_count(); ++a)
    if (!repair_spacing(x.positions[a], p.region_half, p.d_min)) x.positions[a] = start.positions[a];
  if (p.switches.fixed_rho) {
    x.rho = *p.switches.fixed_rho;
  } else {
    x.rho = optimal_offload_ratio(primal_offload(p, primal_rates(p, x)), p.switches.enforce_local_time);
  }
  return x;
}

}  // namespace

const char* block_name(int block) { return kBlockNames.at(static_cast<std::size_t>(block)); }

double primal_total_latency(const PddProblem& p, const Primal& x) {
  return primal_offload(p, primal_rates(p, x)).total(x.rho);
}

int inner_loop(const PddProblem& p, PddState& s, const SolveOptions& opts) {
  double al = al_objective(p, s);
  int sweeps = 0;
  while (sweeps < opts.max_sweeps) {
    refresh_anchors(s);
    for (int b = 0; b < kBlockCount; ++b) {
      if (opts.observer) {
        const double before = al_objective(p, s);
        kBlocks[b](p, s, opts.blocks);
        opts.observer(b, before, al_objective(p, s));
      } else {
        kBlocks[b](p, s, opts.blocks);
      }
    }
    ++sweeps;
    const double next = al_objective(p, s);
    const double change = relative_change(al, next);
    al = next;
    if (change < opts.inner_tol) break;
  }
  s.inner_sweeps = sweeps;
  return sweeps;
}

void outer_step(const PddProblem& p, PddState& s, const SolveOptions& opts) {
  const ConsensusVector r = residuals(p, s);
  if (max_abs_entry(r) <= s.epsilon1) {
    dual_ascent(r, s.kappa, s.dual);
  } else {
    s.kappa = std::max(opts.kappa_shrink * s.kappa, opts.kappa_floor);
  }
  s.epsilon1 = std::max(opts.epsilon_decay * s.epsilon1, opts.epsilon_final);
  ++s.outer_iter;
}

SolveResult solve(const ScenarioInstance& instance, const SolveOptions& opts, const ModelSwitches& switches) {
  const PddProblem p = make_problem(instance, switches);
  const MAPositions init = init_positions(instance.config, instance.seed);
  const Beamformers beams0 = init_beamformers(instance.config, instance.seed);
  const Primal x0 = to_solver_units(p, init, beams0, 0.5);

  SolveResult out;
  PddState s = initialize_state(p, x0, opts.kappa0, opts.epsilon1);
  double al_prev = al_objective(p, s);
  double violation = constraint_violation(p, s);
  std::optional<Primal> best;
  double best_T = std::numeric_limits<double>::infinity();
  for (int t = 0; t < opts.max_outer; ++t) {
    const int sweeps = inner_loop(p, s, opts);
    if (opts.keep_best) {
      Primal candidate = polish(p, s.x, x0);
      const double T = primal_total_latency(p, candidate);
      if (T < best_T) {
        best_T = T;
        best = std::move(candidate);
      }
    }
    const double al = al_objective(p, s);
    violation = constraint_violation(p, s);
    out.trace.push_back({t + 1, sweeps, al, primal_total_latency(p, s.x), violation, s.kappa});
    const bool settled = relative_change(al_prev, al) < opts.outer_tol;
    al_prev = al;
    if (violation <= opts.epsilon_final && settled) break;
    outer_step(p, s, opts);
    al_prev = al_objective(p, s);
  }
  out.state = s;
  Primal x = polish(p, s.x, x0);
  if (opts.keep_best && best && primal_total_latency(p, *best) < primal_total_latency(p, x)) x = *best;
  if (opts.position_search && !p.switches.positions_frozen) {
    x = search_positions(p, x, opts.search).x;
    x = polish(p, x, x0);
  }

  Solution& sol = out.solution;
  sol.positions = p.switches.positions_frozen ? init : positions_to_meters(p, x.positions);
  sol.beams = beams_to_physical(p, x);
  sol.rho = x.rho;
  sol.evaluation = evaluate(instance, sol.positions, sol.beams, sol.rho);
  sol.violation = violation;
  sol.converged = violation <= opts.epsilon_final;
  sol.outer_iters = static_cast<int>(out.trace.size());
  return out;
}

}  // namespace marelay::pdd
