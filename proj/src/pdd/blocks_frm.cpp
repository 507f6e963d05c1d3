#include <vector>

#include "marelay/pdd/blocks.hpp"

namespace marelay::pdd {

namespace {

/// Terms ||y - B x||^2, ||t - B^H s||^2 and ||t - g B||^2 that involve one B.
struct FieldTerms {
  std::vector<CVector> bx_res, bx_x;
  std::vector<CVector> bh_res, bh_s;
  std::vector<CRowVector> row_res, row_g;

  void add_bx(const CMatrix& B, const CVector& y, const CVector& x) {
    bx_res.push_back(y - B * x);
    bx_x.push_back(x);
  }
  void add_bh(const CMatrix& B, const CVector& t, const CVector& s) {
    bh_res.push_back(t - B.adjoint() * s);
    bh_s.push_back(s);
  }
  void add_row(const CMatrix& B, const CRowVector& t, const CRowVector& g) {
    row_res.push_back(t - g * B);
    row_g.push_back(g);
  }
};

/// One pass of exact unit-modulus coordinate minimization over the entries of B.
void sweep_entries(CMatrix& B, const CMatrix& consensus, FieldTerms& f) {
  for (Eigen::Index m = 0; m < B.cols(); ++m) {
    for (Eigen::Index l = 0; l < B.rows(); ++l) {
      const cplx old = B(l, m);
      cplx b = consensus(l, m);
      for (std::size_t j = 0; j < f.bx_res.size(); ++j) {
        const cplx beta = f.bx_x[j](m);
        b += (f.bx_res[j](l) + old * beta) * std::conj(beta);
      }
      for (std::size_t j = 0; j < f.bh_res.size(); ++j) {
        const cplx sl = f.bh_s[j](l);
        b += std::conj(f.bh_res[j](m) + std::conj(old) * sl) * sl;
      }
      for (std::size_t j = 0; j < f.row_res.size(); ++j) {
        const cplx gl = f.row_g[j](l);
        b += (f.row_res[j](m) + gl * old) * std::conj(gl);
      }
      const cplx next = unit_phase(b, old);
      const cplx delta = next - old;
      if (delta == cplx{}) continue;
      B(l, m) = next;
      for (std::size_t j = 0; j < f.bx_res.size(); ++j) f.bx_res[j](l) -= delta * f.bx_x[j](m);
      for (std::size_t j = 0; j < f.bh_res.size(); ++j) f.bh_res[j](m) -= std::conj(delta) * f.bh_s[j](l);
      for (std::size_t j = 0; j < f.row_res.size(); ++j) f.row_res[j](m) -= f.row_g[j](l) * delta;
    }
  }
}

}  // namespace

void update_field_responses(const PddProblem& p, PddState& s, const BlockOptions&) {
  if (p.switches.positions_frozen) return;
  AuxiliaryVariables& a = s.aux;
  const DualVariables& l = s.dual;
  const double kappa = s.kappa;
  const int K = p.K;

  for (int i = 0; i < p.array_count(); ++i) {
    CMatrix& B = a.B[i];
    const CMatrix consensus = p.arrays[i].response(s.x.positions[i]) + kappa * l.B[i];
    FieldTerms f;
    const ArrayRef ref = array_ref(i, K);
    switch (ref.kind) {
      case ArrayKind::ue_uplink:
        f.add_bx(B, a.mu[ref.k] + kappa * l.mu[ref.k], s.x.w[ref.k]);
        break;
      case ArrayKind::d2d_tx:
        f.add_bx(B, a.omega[ref.k] + kappa * l.omega[ref.k], s.x.w_d2d[ref.k]);
        break;
      case ArrayKind::bs:
        for (int k = 0; k < K; ++k) f.add_bx(B, a.v_b[k] + kappa * l.v_b[k], s.x.Q.col(k));
        break;
      case ArrayKind::relay_rx:
        for (int k = 0; k < K; ++k)
          f.add_bh(B, a.mu_tilde[k] + kappa * l.mu_tilde[k], p.sigma_up[k].cwiseProduct(a.mu[k]));
        break;
      case ArrayKind::d2d_rx:
        for (int j = 0; j < K; ++j)
          f.add_bh(B, a.omega_tilde[ref.k][j] + kappa * l.omega_tilde[ref.k][j],
                   p.sigma_d2d[ref.k][j].cwiseProduct(a.omega[j]));
        break;
      case ArrayKind::relay_tx:
        for (int k = 0; k < K; ++k)
          f.add_row(B, a.v_b_tilde[k] + kappa * l.v_b_tilde[k],
                    a.v_b[k].conjugate().cwiseProduct(p.sigma_rb).transpose());
        break;
    }
    sweep_entries(B, consensus, f);
  }
}

}  // namespace marelay::pdd
