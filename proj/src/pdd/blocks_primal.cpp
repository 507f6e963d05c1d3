#include <cmath>

#include "marelay/pdd/blocks.hpp"
#include "marelay/surrogate.hpp"

namespace marelay::pdd {

namespace {

/// (I + G) x = rhs for Hermitian PSD G.
template <class Rhs>
CMatrix solve_shifted(const CMatrix& G, const Rhs& rhs) {
  const CMatrix A = CMatrix::Identity(G.rows(), G.cols()) + G;
  return A.llt().solve(CMatrix(rhs));
}

// Per-UE uplink time covers the local compute share t_ck.
RVector uplink_floor(const PddProblem& p, const AuxiliaryVariables& a) {
  return p.switches.enforce_local_time ? RVector(a.t_ck.cwiseMax(0.0)) : RVector::Zero(p.K);
}

RateGroupResult rate_group(double C0, double w_C, double e0, double eta_now, const BlockOptions& o) {
  if (o.exact_rate_bound) return solve_rate_group(C0, w_C, e0, o.search);
  const AffineSurrogate t = linearize_rate_bound(std::max(eta_now, 0.0), o.tangent_form);
  return solve_rate_group_affine(C0, w_C, e0, t.constant, t.gradient[0], t.anchor[0]);
}

}  // namespace

void update_primal(const PddProblem& p, PddState& s, const BlockOptions& o) {
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  Primal& x = s.x;
  const double kappa = s.kappa;
  const int K = p.K;

  {
    CMatrix G = CMatrix::Zero(p.N_t, p.N_t);
    CMatrix rhs = a.F_tilde - kappa * l.F_tilde;
    for (int k = 0; k < K; ++k) {
      G.noalias() += a.v_b_tilde[k].adjoint() * a.v_b_tilde[k];
      rhs.noalias() += a.v_b_tilde[k].adjoint() * (a.u_row[k] + kappa * l.u_row[k]);
    }
    x.F = solve_shifted(G, rhs);
  }

  for (int k = 0; k < K; ++k) {
    const CMatrix& B = a.B[p.ue(k)];
    x.w[k] = solve_shifted(B.adjoint() * B, (a.w_hat[k] - kappa * l.w_hat[k]) + B.adjoint() * (a.mu[k] + kappa * l.mu[k]));
  }

  const CMatrix& B_rr = a.B[p.relay_rx()];
  for (int k = 0; k < K; ++k) {
    const CMatrix M = B_rr.adjoint() * p.sigma_up[k].asDiagonal();
    const CVector rhs = (a.B[p.ue(k)] * x.w[k] - kappa * l.mu[k]) + M.adjoint() * (a.mu_tilde[k] + kappa * l.mu_tilde[k]);
    a.mu[k] = solve_shifted(M.adjoint() * M, rhs);
  }

  const CMatrix N = a.B[p.relay_tx()].adjoint() * p.sigma_rb.conjugate().asDiagonal();
  const CMatrix NN = N.adjoint() * N;
  for (int k = 0; k < K; ++k) {
    const CVector y = (a.v_b_tilde[k] + kappa * l.v_b_tilde[k]).adjoint();
    a.v_b[k] = solve_shifted(NN, (a.B[p.bs()] * x.Q.col(k) - kappa * l.v_b[k]) + N.adjoint() * y);
  }

  for (int j = 0; j < K; ++j) {
    const Eigen::Index L = a.omega[j].size();
    CMatrix G = CMatrix::Zero(L, L);
    CVector rhs = a.B[p.d2d_tx(j)] * x.w_d2d[j] - kappa * l.omega[j];
    for (int k = 0; k < K; ++k) {
      const CMatrix M = a.B[p.d2d_rx(k)].adjoint() * p.sigma_d2d[k][j].asDiagonal();
      G.noalias() += M.adjoint() * M;
      rhs.noalias() += M.adjoint() * (a.omega_tilde[k][j] + kappa * l.omega_tilde[k][j]);
    }
    a.omega[j] = solve_shifted(G, rhs);
  }

  {
    const SumGroupResult up = solve_sum_group(a.t_u_tilde - kappa * l.t_u_tilde, 1.0,
                                              a.t_uk_tilde - kappa * l.t_uk, kappa, uplink_floor(p, a));
    a.t_u = up.s;
    a.t_uk = up.x;
    const double s0 = 0.5 * ((a.t_d_hat - kappa * l.t_d_hat) + (a.t_d_tilde - kappa * l.t_d_tilde));
    const SumGroupResult dn = solve_sum_group(s0, 2.0, a.t_dk_tilde - kappa * l.t_dk, kappa);
    a.t_d = dn.s;
    a.t_dk = dn.x;
  }

  for (int k = 0; k < K; ++k) {
    const double C0 = 0.5 * ((a.C_hat(k) - kappa * l.C_hat(k)) + (a.C_bar(k) - kappa * l.C_bar(k)));
    const RateGroupResult up = rate_group(C0, 2.0, a.eta_tilde(k) - kappa * l.eta_tilde(k), a.eta(k), o);
    if (up.ok) {
      a.C(k) = up.C;
      a.eta(k) = up.eta;
    } else {
      ++s.diagnostics.multiplier_failures;
    }
    const RateGroupResult dd =
        rate_group(a.C_check(k) - kappa * l.C_check(k), 1.0, a.eta_bar(k) - kappa * l.eta_bar(k), a.eta_hat(k), o);
    if (dd.ok) {
      a.C_tilde(k) = dd.C;
      a.eta_hat(k) = dd.eta;
    } else {
      ++s.diagnostics.multiplier_failures;
    }
  }
}

void update_links(const PddProblem& p, PddState& s, const BlockOptions&) {
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  Primal& x = s.x;
  const double kappa = s.kappa;
  const int K = p.K;

  for (int k = 0; k < K; ++k) {
    const CMatrix& B = a.B[p.d2d_tx(k)];
    x.w_d2d[k] = solve_shifted(B.adjoint() * B,
                               (a.w_bar[k] - kappa * l.w_bar[k]) + B.adjoint() * (a.omega[k] + kappa * l.omega[k]));
  }

  {
    CMatrix G = CMatrix::Zero(p.N_r, p.N_r);
    for (int k = 0; k < K; ++k) G.noalias() += a.u_row[k].adjoint() * a.u_row[k];
    const CMatrix& B_rr = a.B[p.relay_rx()];
    for (int j = 0; j < K; ++j) {
      CVector rhs = B_rr.adjoint() * p.sigma_up[j].cwiseProduct(a.mu[j]) - kappa * l.mu_tilde[j];
      for (int k = 0; k < K; ++k) rhs += a.u_row[k].adjoint() * (a.u_kk(k, j) + kappa * l.u_kk(k, j));
      a.mu_tilde[j] = solve_shifted(G, rhs);
    }
  }

  {
    const CMatrix FF = x.F * x.F.adjoint();
    const CMatrix A = CMatrix::Identity(p.N_t, p.N_t) + FF;
    const auto llt = A.llt();
    for (int k = 0; k < K; ++k) {
      const CRowVector rhs = (a.v_b[k].adjoint() * p.sigma_rb.asDiagonal() * a.B[p.relay_tx()] -
                              kappa * l.v_b_tilde[k]) +
                             (a.u_row[k] + kappa * l.u_row[k]) * x.F.adjoint();
      a.v_b_tilde[k] = llt.solve(rhs.adjoint()).adjoint();
    }
  }
}

}  // namespace marelay::pdd
