#include <cmath>
#include <vector>

#include "marelay/pdd/blocks.hpp"

namespace marelay::pdd {

namespace {

constexpr int kMaxBacktracks = 30;


/// Part of the augmented Lagrangian (times 2 kappa) that depends on one antenna.
double antenna_cost(const ArrayModel& m, const Vec2& v, const CVector& b, const std::vector<Vec2>& targets) {
  const RVector ph = m.phases(v);
  double J = 0.0;
  for (int l = 0; l < m.paths(); ++l) J += std::norm(std::polar(1.0, ph(l)) - b(l));
  for (const Vec2& t : targets) J += (v - t).squaredNorm();
  return J;
}

}  // namespace

void update_positions(const PddProblem& p, PddState& s, const BlockOptions&) {
  if (p.switches.positions_frozen) return;
  const AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const double kappa = s.kappa;
  const double h = p.region_half;

  for (int i = 0; i < p.array_count(); ++i) {
    const ArrayModel& model = p.arrays[i];
    Coords& V = s.x.positions[i];
    const CMatrix phase_targets = a.B[i] - kappa * l.B[i];
    const auto pairs = antenna_pairs(model.antennas);
    std::vector<Vec2> pair_diff(pairs.size());
    for (std::size_t q = 0; q < pairs.size(); ++q) pair_diff[q] = a.diff[i][q] + kappa * l.diff[i][q];

    for (int m = 0; m < model.antennas; ++m) {
      std::vector<Vec2> targets;
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        if (pairs[q].first == m) targets.push_back(pair_diff[q] + V.col(pairs[q].second));
        if (pairs[q].second == m) targets.push_back(V.col(pairs[q].first) - pair_diff[q]);
      }
      const CVector b = phase_targets.col(m);
      const Vec2 v0 = V.col(m);
      const RVector ph0 = model.phases(v0);

      // Quadratic majorizer of each phase term, tight at v0.
      Eigen::Matrix2d H = 2.0 * static_cast<double>(targets.size()) * Eigen::Matrix2d::Identity();
      Vec2 g = Vec2::Zero();
      for (const Vec2& t : targets) g += 2.0 * t;
      for (int p_l = 0; p_l < model.paths(); ++p_l) {
        const double weight = std::abs(b(p_l));
        if (weight == 0.0) continue;
        const Vec2 d = kTwoPi * model.directions.col(p_l);
        const double target = ph0(p_l) - std::sin(ph0(p_l) - std::arg(b(p_l)));
        H.noalias() += 2.0 * weight * d * d.transpose();
        g += 2.0 * weight * (target - model.phase0(p_l)) * d;
      }
      const Vec2 v1 = solve_box_qp(H, g, h, v0);

      const double J0 = antenna_cost(model, v0, b, targets);
      double step = 1.0;
      Vec2 candidate = v1;
      int tries = 0;
      while (antenna_cost(model, candidate, b, targets) > J0 + 1e-12 * (1.0 + J0)) {
        if (++tries > kMaxBacktracks) break;
        step *= 0.5;
        candidate = v0 + step * (v1 - v0);
      }
      if (tries > kMaxBacktracks) {
        ++s.diagnostics.position_rejections;
        continue;
      }
      s.diagnostics.position_backtracks += tries;
      V.col(m) = candidate;
    }
  }
}

}  // namespace marelay::pdd
