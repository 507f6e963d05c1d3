#pragma once

#include <complex>
#include <tuple>
#include <vector>

#include "marelay/pdd/problem.hpp"
#include "marelay/types.hpp"

namespace marelay::pdd {

/// Copies and splitting variables. Index conventions: [k] per UE, u_kk(k, k'')
/// is the k-th combiner output of UE k''s signal, omega_tilde[k][k'] is the
/// field at D2D receiver k from transmitter k', B and diff follow the flat
/// array order and diff[a] follows antenna_pairs().
struct AuxiliaryVariables {
  double t_u = 0.0;
  double t_d = 0.0;
  double t_u_tilde = 0.0;
  double t_d_hat = 0.0;
  double t_d_tilde = 0.0;
  RVector t_uk, t_dk, t_ck;
  RVector t_uk_tilde, t_dk_tilde, t_ck_tilde;

  RVector C, C_hat, C_bar;  ///< uplink rate and copies
  RVector C_tilde, C_check; ///< D2D rate and copy
  RVector eta, eta_tilde;   ///< uplink SINR and copy
  RVector eta_hat, eta_bar; ///< D2D SINR and copy

  double rho_hat = 0.0;
  RVector rho_bar, rho_tilde, rho_check;

  CMatrix u_kk;
  std::vector<CRowVector> u_row;      ///< q_k^H G F, 1 x N_r
  std::vector<CVector> mu;            ///< B_k w_k, L
  std::vector<CVector> mu_tilde;      ///< B_r^H Sigma_k mu_k, N_r
  std::vector<CVector> v_b;           ///< B_b q_k, L_tilde
  std::vector<CRowVector> v_b_tilde;  ///< v_b^H Sigma~ B_t, 1 x N_t
  std::vector<CVector> omega;         ///< B_tx,k w~_k, L_bar
  std::vector<std::vector<CVector>> omega_tilde;  ///< B_rx,k^H Sigma~_kk' omega_k', N_u

  CMatrix F_tilde;
  std::vector<CVector> w_hat;
  std::vector<CVector> w_bar;

  std::vector<CMatrix> B;
  std::vector<std::vector<Vec2>> diff;
};

/// One entry per equality coupling; used both for residuals and for duals.
struct ConsensusVector {
  double rho_hat = 0.0;
  RVector rho_bar, rho_tilde, rho_check;
  double t_d_hat = 0.0;
  double t_d_tilde = 0.0;
  double t_u_tilde = 0.0;
  RVector C_hat, C_bar, C_check;
  RVector t_uk, t_dk, t_ck;
  RVector eta_tilde, eta_bar;
  CMatrix F_tilde;
  std::vector<CVector> w_hat, w_bar;
  CMatrix u_kk;
  std::vector<CRowVector> u_row;
  std::vector<CVector> mu, mu_tilde, v_b;
  std::vector<CRowVector> v_b_tilde;
  std::vector<CVector> omega;
  std::vector<std::vector<CVector>> omega_tilde;
  std::vector<CMatrix> B;
  std::vector<std::vector<Vec2>> diff;

  auto fields() {
    return std::tie(rho_hat, rho_bar, rho_tilde, rho_check, t_d_hat, t_d_tilde, t_u_tilde, C_hat, C_bar, C_check,
                    t_uk, t_dk, t_ck, eta_tilde, eta_bar, F_tilde, w_hat, w_bar, u_kk, u_row, mu, mu_tilde, v_b,
                    v_b_tilde, omega, omega_tilde, B, diff);
  }
  auto fields() const {
    return std::tie(rho_hat, rho_bar, rho_tilde, rho_check, t_d_hat, t_d_tilde, t_u_tilde, C_hat, C_bar, C_check,
                    t_uk, t_dk, t_ck, eta_tilde, eta_bar, F_tilde, w_hat, w_bar, u_kk, u_row, mu, mu_tilde, v_b,
                    v_b_tilde, omega, omega_tilde, B, diff);
  }
};

using DualVariables = ConsensusVector;

/// Flat real and complex buffers in a fixed field order.
struct PackedTerms {
  std::vector<double> real;
  std::vector<std::complex<double>> complex;
};

void pack(const ConsensusVector& v, PackedTerms& out);
/// Inverse of pack; v must already have the packed shapes.
void unpack(const PackedTerms& in, ConsensusVector& v);
/// Zero-valued vector shaped for the given problem.
ConsensusVector zero_consensus(const PddProblem& p);

/// Expansion points of the convex surrogates, refreshed at each sweep start.
struct ScaAnchors {
  RVector up_t, up_C;        ///< (t~_uk, C-bar_k)
  RVector d2d_t, d2d_C;      ///< (t~_dk, C-check_k)
  CVector u_self;            ///< u_kk
  RVector eta_tilde;
  std::vector<CVector> omega_self;  ///< omega_tilde[k][k]
  RVector eta_bar;
  std::vector<std::vector<Vec2>> diff;
};

struct BlockDiagnostics {
  int multiplier_failures = 0;
  int position_backtracks = 0;
  int position_rejections = 0;
};

struct PddState {
  Primal x;
  AuxiliaryVariables aux;
  DualVariables dual;
  ScaAnchors anchors;
  double kappa = 2.0;
  double epsilon1 = 0.1;
  int outer_iter = 0;
  int inner_sweeps = 0;
  BlockDiagnostics diagnostics;
};

/// Auxiliaries consistent with the primal (all residuals zero), zero duals.
PddState initialize_state(const PddProblem& p, const Primal& x, double kappa0, double epsilon1);

void refresh_anchors(PddState& s);

/// Uplink SINR expressed through the splitting variables of UE k.
double uplink_sinr_constraint(const PddProblem& p, const PddState& s, int k);
/// Signal power minorant minus interference and noise; <= 0 when satisfied.
double d2d_sinr_constraint(const PddProblem& p, const PddState& s, int k);

}  // namespace marelay::pdd
