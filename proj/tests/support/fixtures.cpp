#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "marelay/pdd/problem.hpp"

namespace marelay::testing {

SystemConfig reference_config() {
  SystemConfig c;
  c.bandwidth_hz = 1e7;
  return c;
}

SystemConfig tiny_config() {
  SystemConfig c = reference_config();
  c.K = 1;
  c.N_u = c.N_r = c.N_t = c.N_b = 1;
  c.L = c.L_tilde = 1;
  return c;
}

SystemConfig small_config() {
  SystemConfig c = reference_config();
  c.K = 2;
  c.N_u = 2;
  c.N_r = c.N_t = 2;
  c.N_b = 3;
  c.L = 2;
  c.L_tilde = 3;
  return c;
}

namespace {

struct Noise {
  std::mt19937_64 gen;
  double scale;
  double n() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
  void positive(double& x) { x *= std::exp(scale * n()); }
  void positive(RVector& v) {
    for (auto& x : v) positive(x);
  }
  void any(double& x) { x += scale * n(); }
  void any(RVector& v) {
    for (auto& x : v) any(x);
  }
  template <typename M>
  void any_complex(M& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] += scale * cplx(n(), n());
  }
  template <typename M>
  void all_complex(std::vector<M>& v) {
    for (auto& m : v) any_complex(m);
  }
};

}  // namespace

pdd::PddState random_state(const pdd::PddProblem& p, const ScenarioInstance& inst, std::uint64_t seed,
                           double scale) {
  const Beamformers b0 = init_beamformers(inst.config, inst.seed);
  const pdd::Primal x0 = pdd::to_solver_units(p, init_positions(inst.config, inst.seed), b0, 0.5);
  pdd::PddState s = pdd::initialize_state(p, x0, 1.0, 0.1);
  Noise z{std::mt19937_64(seed), scale};
  auto& a = s.aux;
  z.positive(a.t_u);
  z.positive(a.t_d);
  z.positive(a.t_u_tilde);
  z.positive(a.t_d_hat);
  z.positive(a.t_d_tilde);
  for (RVector* v : {&a.t_uk, &a.t_dk, &a.t_ck, &a.t_uk_tilde, &a.t_dk_tilde, &a.t_ck_tilde, &a.C, &a.C_hat,
                     &a.C_bar, &a.C_tilde, &a.C_check, &a.eta, &a.eta_tilde, &a.eta_hat, &a.eta_bar})
    z.positive(*v);
  z.any_complex(a.u_kk);
  z.all_complex(a.u_row);
  z.all_complex(a.mu);
  z.all_complex(a.mu_tilde);
  z.all_complex(a.v_b);
  z.all_complex(a.v_b_tilde);
  z.all_complex(a.omega);
  for (auto& row : a.omega_tilde) z.all_complex(row);
  z.any_complex(a.F_tilde);
  z.all_complex(a.w_hat);
  z.all_complex(a.w_bar);
  for (auto& B : a.B)
    for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] *= std::polar(1.0, scale * z.n());
  for (auto& d : a.diff)
    for (auto& v : d) v += 0.1 * scale * Vec2(z.n(), z.n());
  for (auto& w : s.x.w) z.any_complex(w);
  for (auto& w : s.x.w_d2d) z.any_complex(w);
  z.any_complex(s.x.F);
  z.any_complex(s.x.Q);

  pdd::PackedTerms duals;
  pdd::pack(s.dual, duals);
  for (auto& v : duals.real) v = 0.2 * scale * z.n();
  for (auto& v : duals.complex) v = 0.2 * scale * cplx(z.n(), z.n());
  pdd::unpack(duals, s.dual);
  s.kappa = std::exp(std::uniform_real_distribution<double>(std::log(0.01), std::log(2.0))(z.gen));
  s.x.rho = std::uniform_real_distribution<double>(0.05, 0.95)(z.gen);
  for (double* r : {&a.rho_hat}) *r = std::clamp(s.x.rho + 0.1 * scale * z.n(), 0.0, 1.0);
  pdd::refresh_anchors(s);
  return s;
}

}  // namespace marelay::testing
