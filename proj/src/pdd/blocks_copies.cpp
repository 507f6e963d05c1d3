#include <algorithm>
#include <cmath>

#include "marelay/pdd/blocks.hpp"

namespace marelay::pdd {

void update_power_copies(const PddProblem& p, PddState& s, const BlockOptions&) {
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const double kappa = s.kappa;
  a.F_tilde = project_ball(CMatrix(s.x.F + kappa * l.F_tilde), std::sqrt(p.P_relay));
  for (int k = 0; k < p.K; ++k) {
    a.w_hat[k] = project_ball(CVector(s.x.w[k] + kappa * l.w_hat[k]), std::sqrt(p.P_ue));
    a.w_bar[k] = project_ball(CVector(s.x.w_d2d[k] + kappa * l.w_bar[k]), std::sqrt(p.P_ue));
  }
}

void update_latency_copies(const PddProblem& p, PddState& s, const BlockOptions& o) {
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const ScaAnchors& an = s.anchors;
  const double kappa = s.kappa;
  const double rho = s.x.rho;

  const PairResult e = solve_edge_group(rho + kappa * l.rho_hat, a.t_d + kappa * l.t_d_tilde, p.edge_coef);
  a.rho_hat = e.r;
  a.t_d_tilde = e.t;

  auto apply = [&](const ProductGroupInput& in, double& r, double& t, double& C) {
    const ProductGroupResult g = solve_product_group(in, o.search);
    if (!g.ok) {
      ++s.diagnostics.multiplier_failures;
      return;
    }
    r = g.r;
    t = g.t;
    C = g.C;
  };

  for (int k = 0; k < p.K; ++k) {
    ProductGroupInput up{rho + kappa * l.rho_bar(k), a.t_uk(k) + kappa * l.t_uk(k), a.C(k) + kappa * l.C_bar(k),
                         p.up_coef, 0.0, an.up_t(k), an.up_C(k), false};
    apply(up, a.rho_bar(k), a.t_uk_tilde(k), a.C_bar(k));

    ProductGroupInput dd{rho + kappa * l.rho_tilde(k), a.t_dk(k) + kappa * l.t_dk(k),
                         a.C_tilde(k) + kappa * l.C_check(k), -p.d2d_coef, p.d2d_coef, an.d2d_t(k), an.d2d_C(k),
                         false};
    apply(dd, a.rho_tilde(k), a.t_dk_tilde(k), a.C_check(k));

    a.t_ck_tilde(k) = a.t_ck(k) + kappa * l.t_ck(k);
    a.rho_check(k) = std::clamp(rho + kappa * l.rho_check(k), 0.0, 1.0);
    a.C_hat(k) = a.C(k) + kappa * l.C_hat(k);
  }
  a.t_d_hat = a.t_d + kappa * l.t_d_hat;
  a.t_u_tilde = a.t_u + kappa * l.t_u_tilde;

  double sum = a.rho_hat - kappa * l.rho_hat;
  for (int k = 0; k < p.K; ++k)
    sum += (a.rho_bar(k) - kappa * l.rho_bar(k)) + (a.rho_tilde(k) - kappa * l.rho_tilde(k)) +
           (a.rho_check(k) - kappa * l.rho_check(k));
  const double n = 1.0 + 3.0 * p.K;
  const RVector t0 = a.t_ck_tilde - kappa * l.t_ck;
  const RhoGroupResult r =
      solve_rho_group(sum / n, n, t0, a.t_uk, p.local_coef, p.switches.enforce_local_time, p.switches.fixed_rho);
  s.x.rho = r.rho;
  a.t_ck = r.t;
}

void update_distance_copies(const PddProblem& p, PddState& s, const BlockOptions&) {
  if (p.switches.positions_frozen) return;
  AuxiliaryVariables& a = s.aux;
  for (int i = 0; i < p.array_count(); ++i) {
    const auto pairs = antenna_pairs(p.arrays[i].antennas);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const Vec2 current = s.x.positions[i].col(pairs[q].first) - s.x.positions[i].col(pairs[q].second);
      const Vec2 y = current - s.kappa * s.dual.diff[i][q];
      Vec2 anchor = s.anchors.diff[i][q];
      if (anchor.norm() == 0.0) anchor = current.norm() > 0.0 ? current : Vec2(1.0, 0.0);
      a.diff[i][q] = project_halfspace(y, anchor / anchor.norm(), p.d_min);
    }
  }
}

}  // namespace marelay::pdd
