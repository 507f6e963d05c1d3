#include "marelay/pdd/position_search.hpp"

#include <array>
#include <cmath>

#include "marelay/positions.hpp"

namespace marelay::pdd {

double best_rho_latency(const PddProblem& p, const Primal& x) {
  const OffloadCoefficients c = primal_offload(p, primal_rates(p, x));
  const double rho = p.switches.fixed_rho ? *p.switches.fixed_rho
                                          : optimal_offload_ratio(c, p.switches.enforce_local_time);
  return c.total(rho);
}

PositionSearchResult search_positions(const PddProblem& p, const Primal& start, const PositionSearchOptions& opts) {
  constexpr std::array<int, 8> dx{1, -1, 0, 0, 1, 1, -1, -1};
  constexpr std::array<int, 8> dy{0, 0, 1, -1, 1, -1, 1, -1};
  PositionSearchResult out{start, best_rho_latency(p, start), 1};
  if (p.switches.positions_frozen) return out;

  for (double h : opts.steps) {
    bool improved = true;
    while (improved && out.evaluations < opts.max_evaluations) {
      improved = false;
      for (int a = 0; a < p.array_count(); ++a) {
        Coords& v = out.x.positions[a];
        for (Eigen::Index m = 0; m < v.cols(); ++m) {
          for (std::size_t d = 0; d < dx.size() && out.evaluations < opts.max_evaluations; ++d) {
            const Vec2 old = v.col(m);
            const Vec2 moved = old + h * Vec2(dx[d], dy[d]);
            if (std::abs(moved.x()) > p.region_half || std::abs(moved.y()) > p.region_half) continue;
            v.col(m) = moved;
            if (v.cols() > 1 && min_pairwise_distance(v) < p.d_min) {
              v.col(m) = old;
              continue;
            }
            const double T = best_rho_latency(p, out.x);
            ++out.evaluations;
            if (T < out.T) {
              out.T = T;
              improved = true;
            } else {
              v.col(m) = old;
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace marelay::pdd
