#include "marelay/pdd/state.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "marelay/surrogate.hpp"

namespace marelay::pdd {

namespace {

void pack_one(double x, PackedTerms& out) { out.real.push_back(x); }

template <class Derived>
void pack_one(const Eigen::MatrixBase<Derived>& m, PackedTerms& out) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if constexpr (std::is_same_v<Scalar, cplx>)
        out.complex.push_back(m(i, j));
      else
        out.real.push_back(m(i, j));
    }
}

template <class T>
void pack_one(const std::vector<T>& v, PackedTerms& out) {
  for (const auto& e : v) pack_one(e, out);
}

struct Cursor {
  const PackedTerms& in;
  std::size_t r = 0;
  std::size_t c = 0;
};

void unpack_one(double& x, Cursor& cur) { x = cur.in.real.at(cur.r++); }

template <class Derived>
void unpack_one(Eigen::MatrixBase<Derived>& m, Cursor& cur) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if constexpr (std::is_same_v<Scalar, cplx>)
        m(i, j) = cur.in.complex.at(cur.c++);
      else
        m(i, j) = cur.in.real.at(cur.r++);
    }
}

template <class T>
void unpack_one(std::vector<T>& v, Cursor& cur) {
  for (auto& e : v) unpack_one(e, cur);
}

double log2_1p(double x) { return std::log2(1.0 + x); }

}  // namespace

void pack(const ConsensusVector& v, PackedTerms& out) {
  out.real.clear();
  out.complex.clear();
  std::apply([&](const auto&... f) { (pack_one(f, out), ...); }, v.fields());
}

void unpack(const PackedTerms& in, ConsensusVector& v) {
  Cursor cur{in};
  std::apply([&](auto&... f) { (unpack_one(f, cur), ...); }, v.fields());
}

ConsensusVector zero_consensus(const PddProblem& p) {
  const int K = p.K;
  ConsensusVector z;
  z.rho_bar = z.rho_tilde = z.rho_check = RVector::Zero(K);
  z.C_hat = z.C_bar = z.C_check = RVector::Zero(K);
  z.t_uk = z.t_dk = z.t_ck = RVector::Zero(K);
  z.eta_tilde = z.eta_bar = RVector::Zero(K);
  z.F_tilde = CMatrix::Zero(p.N_t, p.N_r);
  z.w_hat.assign(K, CVector::Zero(p.N_u));
  z.w_bar.assign(K, CVector::Zero(p.N_u));
  z.u_kk = CMatrix::Zero(K, K);
  z.u_row.assign(K, CRowVector::Zero(p.N_r));
  for (int k = 0; k < K; ++k) z.mu.push_back(CVector::Zero(p.arrays[p.ue(k)].paths()));
  z.mu_tilde.assign(K, CVector::Zero(p.N_r));
  z.v_b.assign(K, CVector::Zero(p.arrays[p.bs()].paths()));
  z.v_b_tilde.assign(K, CRowVector::Zero(p.N_t));
  for (int k = 0; k < K; ++k) z.omega.push_back(CVector::Zero(p.arrays[p.d2d_tx(k)].paths()));
  z.omega_tilde.assign(K, std::vector<CVector>(K, CVector::Zero(p.N_u)));
  for (int a = 0; a < p.array_count(); ++a) {
    const ArrayModel& m = p.arrays[a];
    z.B.push_back(CMatrix::Zero(m.paths(), m.antennas));
    z.diff.emplace_back(antenna_pairs(m.antennas).size(), Vec2::Zero());
  }
  return z;
}

PddState initialize_state(const PddProblem& p, const Primal& x0, double kappa0, double epsilon1) {
  const int K = p.K;
  PddState s;
  s.x = x0;
  s.kappa = kappa0;
  s.epsilon1 = epsilon1;
  s.dual = zero_consensus(p);
  AuxiliaryVariables& a = s.aux;
  Primal& x = s.x;

  for (int i = 0; i < p.array_count(); ++i) {
    a.B.push_back(p.arrays[i].response(x.positions[i]));
    std::vector<Vec2> d;
    for (auto [o1, o2] : antenna_pairs(p.arrays[i].antennas)) d.push_back(x.positions[i].col(o1) - x.positions[i].col(o2));
    a.diff.push_back(std::move(d));
  }

  const CMatrix& B_rr = a.B[p.relay_rx()];
  const CMatrix& B_rt = a.B[p.relay_tx()];
  const CMatrix& B_bs = a.B[p.bs()];
  for (int k = 0; k < K; ++k) {
    a.mu.push_back(a.B[p.ue(k)] * x.w[k]);
    a.mu_tilde.push_back(B_rr.adjoint() * (p.sigma_up[k].asDiagonal() * a.mu[k]));
    a.v_b.push_back(B_bs * x.Q.col(k));
    a.v_b_tilde.push_back(a.v_b[k].adjoint() * p.sigma_rb.asDiagonal() * B_rt);
    a.u_row.push_back(a.v_b_tilde[k] * x.F);
  }
  a.u_kk.resize(K, K);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j) a.u_kk(k, j) = (a.u_row[k] * a.mu_tilde[j]).value();
  for (int k = 0; k < K; ++k) a.omega.push_back(a.B[p.d2d_tx(k)] * x.w_d2d[k]);
  a.omega_tilde.assign(K, std::vector<CVector>(K));
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j)
      a.omega_tilde[k][j] = a.B[p.d2d_rx(k)].adjoint() * (p.sigma_d2d[k][j].asDiagonal() * a.omega[j]);

  a.eta.resize(K);
  a.eta_hat.resize(K);
  for (int k = 0; k < K; ++k) {
    double interf = 0.0;
    for (int j = 0; j < K; ++j)
      if (j != k) interf += std::norm(a.u_kk(k, j));
    const double noise = p.s2_r * a.u_row[k].squaredNorm() + p.s2_b * x.Q.col(k).squaredNorm();
    a.eta(k) = std::norm(a.u_kk(k, k)) / (interf + noise);
    double interf_d = 0.0;
    for (int j = 0; j < K; ++j)
      if (j != k) interf_d += a.omega_tilde[k][j].squaredNorm();
    a.eta_hat(k) = a.omega_tilde[k][k].squaredNorm() / (interf_d + p.s2_d(k));
  }
  a.eta_tilde = a.eta;
  a.eta_bar = a.eta_hat;
  a.C = a.eta.unaryExpr(&log2_1p);
  a.C_hat = a.C_bar = a.C;
  a.C_tilde = a.eta_hat.unaryExpr(&log2_1p);
  a.C_check = a.C_tilde;

  if (p.switches.fixed_rho) {
    x.rho = *p.switches.fixed_rho;
  } else {
    OffloadCoefficients c;
    for (int k = 0; k < K; ++k) {
      c.uplink += p.up_coef / a.C(k);
      c.d2d += p.d2d_coef / a.C_tilde(k);
    }
    c.edge = p.edge_coef;
    c.local = p.local_coef;
    x.rho = optimal_offload_ratio(c, p.switches.enforce_local_time);
  }
  a.rho_hat = x.rho;
  a.rho_bar = a.rho_tilde = a.rho_check = RVector::Constant(K, x.rho);

  a.t_uk.resize(K);
  a.t_dk.resize(K);
  for (int k = 0; k < K; ++k) {
    a.t_uk(k) = x.rho == 0.0 ? 0.0 : p.up_coef * x.rho / a.C(k);
    a.t_dk(k) = x.rho == 1.0 ? 0.0 : p.d2d_coef * (1.0 - x.rho) / a.C_tilde(k);
  }
  a.t_ck = a.t_uk;
  a.t_uk_tilde = a.t_uk;
  a.t_dk_tilde = a.t_dk;
  a.t_ck_tilde = a.t_ck;
  a.t_u = a.t_uk.sum();
  a.t_d = std::max(p.edge_coef * x.rho, a.t_dk.sum());
  a.t_u_tilde = a.t_u;
  a.t_d_hat = a.t_d_tilde = a.t_d;

  a.F_tilde = x.F;
  a.w_hat = x.w;
  a.w_bar = x.w_d2d;
  refresh_anchors(s);
  return s;
}

void refresh_anchors(PddState& s) {
  const AuxiliaryVariables& a = s.aux;
  ScaAnchors& an = s.anchors;
  const auto K = a.C.size();
  an.up_t = a.t_uk_tilde;
  an.up_C = a.C_bar;
  an.d2d_t = a.t_dk_tilde;
  an.d2d_C = a.C_check;
  an.u_self = a.u_kk.diagonal();
  an.eta_tilde = a.eta_tilde;
  an.omega_self.resize(K);
  for (Eigen::Index k = 0; k < K; ++k) an.omega_self[k] = a.omega_tilde[k][k];
  an.eta_bar = a.eta_bar;
  an.diff = a.diff;
}

double uplink_sinr_constraint(const PddProblem& p, const PddState& s, int k) {
  const AuxiliaryVariables& a = s.aux;
  double interf = 0.0;
  for (int j = 0; j < p.K; ++j)
    if (j != k) interf += std::norm(a.u_kk(k, j));
  const double noise = p.s2_r * a.u_row[k].squaredNorm() + p.s2_b * s.x.Q.col(k).squaredNorm();
  const QuadOverLinearMinorant m{CVector::Constant(1, s.anchors.u_self(k)), s.anchors.eta_tilde(k)};
  return interf + noise - m(CVector::Constant(1, a.u_kk(k, k)), a.eta_tilde(k));
}

double d2d_sinr_constraint(const PddProblem& p, const PddState& s, int k) {
  const AuxiliaryVariables& a = s.aux;
  double interf = 0.0;
  for (int j = 0; j < p.K; ++j)
    if (j != k) interf += a.omega_tilde[k][j].squaredNorm();
  const QuadOverLinearMinorant m{s.anchors.omega_self[k], s.anchors.eta_bar(k)};
  return interf + p.s2_d(k) - m(a.omega_tilde[k][k], a.eta_bar(k));
}

}  // namespace marelay::pdd
