#include <algorithm>

#include "marelay/pdd/blocks.hpp"
#include "marelay/surrogate.hpp"

namespace marelay::pdd {

namespace {

constexpr double kMinAnchor = 1e-12;

}  // namespace

void update_uplink_sinr(const PddProblem& p, PddState& s, const BlockOptions& o) {
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const double kappa = s.kappa;
  for (int k = 0; k < p.K; ++k) {
    UplinkSinrInput in;
    in.k = k;
    in.c = a.mu_tilde;
    in.kl = kappa * l.u_kk.row(k).transpose();
    in.z = a.v_b_tilde[k] * s.x.F - kappa * l.u_row[k];
    in.e0 = a.eta(k) + kappa * l.eta_tilde(k);
    in.s0 = s.anchors.u_self(k);
    in.eta0 = std::max(s.anchors.eta_tilde(k), kMinAnchor);
    in.s2 = p.s2_r;
    in.noise = p.s2_b * s.x.Q.col(k).squaredNorm();
    const UplinkSinrResult r = solve_uplink_sinr_block(in, o.search);
    if (!r.ok) {
      ++s.diagnostics.multiplier_failures;
      continue;
    }
    a.u_kk.row(k) = r.s.transpose();
    a.u_row[k] = r.x;
    a.eta_tilde(k) = r.eta;
  }
}

void update_bs_combiners(const PddProblem& p, PddState& s, const BlockOptions& o) {
  const AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const CMatrix& B = a.B[p.bs()];
  for (int k = 0; k < p.K; ++k) {
    const QuadOverLinearMinorant m{CVector::Constant(1, s.anchors.u_self(k)),
                                   std::max(s.anchors.eta_tilde(k), kMinAnchor)};
    double budget = m(CVector::Constant(1, a.u_kk(k, k)), a.eta_tilde(k)) - p.s2_r * a.u_row[k].squaredNorm();
    for (int j = 0; j < p.K; ++j)
      if (j != k) budget -= std::norm(a.u_kk(k, j));
    const CombinerResult r = solve_ball_least_squares(B, a.v_b[k] + s.kappa * l.v_b[k], p.s2_b, budget, o.search);
    if (!r.ok) {
      ++s.diagnostics.multiplier_failures;
      continue;
    }
    s.x.Q.col(k) = r.q;
  }
}

void update_d2d_sinr(const PddProblem& p, PddState& s, const BlockOptions& o) {
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const double kappa = s.kappa;
  const CMatrix* B = nullptr;
  for (int k = 0; k < p.K; ++k) {
    B = &a.B[p.d2d_rx(k)];
    D2dSinrInput in;
    in.k = k;
    for (int j = 0; j < p.K; ++j)
      in.y.push_back(B->adjoint() * p.sigma_d2d[k][j].cwiseProduct(a.omega[j]) - kappa * l.omega_tilde[k][j]);
    in.e0 = a.eta_hat(k) + kappa * l.eta_bar(k);
    in.o0 = s.anchors.omega_self[k];
    in.eta0 = std::max(s.anchors.eta_bar(k), kMinAnchor);
    in.s2 = p.s2_d(k);
    D2dSinrResult r = solve_d2d_sinr_block(in, o.search);
    if (!r.ok) {
      ++s.diagnostics.multiplier_failures;
      continue;
    }
    a.omega_tilde[k] = std::move(r.o);
    a.eta_bar(k) = r.eta;
  }
}

}  // namespace marelay::pdd
