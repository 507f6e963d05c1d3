#include "marelay/pdd/objective.hpp"

#include <algorithm>

#include "marelay/kernels.hpp"

namespace marelay::pdd {

ConsensusVector residuals(const PddProblem& p, const PddState& s) {
  const AuxiliaryVariables& a = s.aux;
  const Primal& x = s.x;
  const int K = p.K;
  ConsensusVector r;
  r.rho_hat = x.rho - a.rho_hat;
  r.rho_bar = x.rho - a.rho_bar.array();
  r.rho_tilde = x.rho - a.rho_tilde.array();
  r.rho_check = x.rho - a.rho_check.array();
  r.t_d_hat = a.t_d - a.t_d_hat;
  r.t_d_tilde = a.t_d - a.t_d_tilde;
  r.t_u_tilde = a.t_u - a.t_u_tilde;
  r.C_hat = a.C - a.C_hat;
  r.C_bar = a.C - a.C_bar;
  r.C_check = a.C_tilde - a.C_check;
  r.t_uk = a.t_uk - a.t_uk_tilde;
  r.t_dk = a.t_dk - a.t_dk_tilde;
  r.t_ck = a.t_ck - a.t_ck_tilde;
  r.eta_tilde = a.eta - a.eta_tilde;
  r.eta_bar = a.eta_hat - a.eta_bar;
  r.F_tilde = x.F - a.F_tilde;
  r.u_kk.resize(K, K);
  for (int k = 0; k < K; ++k) {
    r.w_hat.push_back(x.w[k] - a.w_hat[k]);
    r.w_bar.push_back(x.w_d2d[k] - a.w_bar[k]);
    for (int j = 0; j < K; ++j) r.u_kk(k, j) = a.u_kk(k, j) - (a.u_row[k] * a.mu_tilde[j]).value();
    r.u_row.push_back(a.u_row[k] - a.v_b_tilde[k] * x.F);
    r.mu.push_back(a.mu[k] - a.B[p.ue(k)] * x.w[k]);
    r.mu_tilde.push_back(a.mu_tilde[k] - a.B[p.relay_rx()].adjoint() * (p.sigma_up[k].asDiagonal() * a.mu[k]));
    r.v_b.push_back(a.v_b[k] - a.B[p.bs()] * x.Q.col(k));
    r.v_b_tilde.push_back(a.v_b_tilde[k] - a.v_b[k].adjoint() * p.sigma_rb.asDiagonal() * a.B[p.relay_tx()]);
    r.omega.push_back(a.omega[k] - a.B[p.d2d_tx(k)] * x.w_d2d[k]);
  }
  r.omega_tilde.assign(K, std::vector<CVector>(K));
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j)
      r.omega_tilde[k][j] =
          a.omega_tilde[k][j] - a.B[p.d2d_rx(k)].adjoint() * (p.sigma_d2d[k][j].asDiagonal() * a.omega[j]);
  for (int i = 0; i < p.array_count(); ++i) {
    r.B.push_back(p.arrays[i].response(x.positions[i]) - a.B[i]);
    const auto pairs = antenna_pairs(p.arrays[i].antennas);
    std::vector<Vec2> d(pairs.size());
    for (std::size_t q = 0; q < pairs.size(); ++q)
      d[q] = a.diff[i][q] - (x.positions[i].col(pairs[q].first) - x.positions[i].col(pairs[q].second));
    r.diff.push_back(std::move(d));
  }
  return r;
}

double al_penalty(const ConsensusVector& r, const DualVariables& dual, double kappa) {
  PackedTerms pr, pl;
  pack(r, pr);
  pack(dual, pl);
  return kernels::sum_shifted_squares(pr.real, pl.real, kappa) +
         kernels::sum_shifted_squares(pr.complex, pl.complex, kappa);
}

double al_objective(const PddProblem& p, const PddState& s) {
  return s.aux.t_u + s.aux.t_d + al_penalty(residuals(p, s), s.dual, s.kappa) / (2.0 * s.kappa);
}

double max_abs_entry(const ConsensusVector& r) {
  PackedTerms pr;
  pack(r, pr);
  return std::max(kernels::max_abs(pr.real), kernels::max_modulus(pr.complex));
}

double constraint_violation(const PddProblem& p, const PddState& s) { return max_abs_entry(residuals(p, s)); }

void dual_ascent(const ConsensusVector& r, double kappa, DualVariables& dual) {
  PackedTerms pr, pl;
  pack(r, pr);
  pack(dual, pl);
  kernels::axpy(1.0 / kappa, pr.real, pl.real);
  kernels::axpy(1.0 / kappa, pr.complex, pl.complex);
  unpack(pl, dual);
}

}  // namespace marelay::pdd
