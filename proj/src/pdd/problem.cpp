#include "marelay/pdd/problem.hpp"

#include <cmath>
#include <limits>

namespace marelay::pdd {

CMatrix ArrayModel::response(const Coords& v) const {
  CMatrix A(paths(), v.cols());
  for (Eigen::Index m = 0; m < v.cols(); ++m) {
    const RVector ph = phases(v.col(m));
    for (int l = 0; l < paths(); ++l) A(l, m) = std::polar(1.0, ph(l));
  }
  return A;
}

RVector ArrayModel::phases(const Vec2& v) const {
  return kTwoPi * (directions.transpose() * v) + phase0;
}

PddProblem make_problem(const ScenarioInstance& instance, ModelSwitches switches) {
  const SystemConfig& c = instance.config;
  PddProblem p;
  p.K = c.K;
  p.N_u = c.N_u;
  p.N_r = c.N_r;
  p.N_t = c.N_t;
  p.N_b = c.N_b;
  p.wavelength_m = c.wavelength_m;
  p.region_half = 0.5 * c.region_side_m / c.wavelength_m;
  p.d_min = c.D_min_m / c.wavelength_m;
  p.switches = switches;

  for (int a = 0; a < array_count(c.K); ++a) {
    const ArrayRef ref = array_ref(a, c.K);
    const PathSet& ps = instance.geometry.of(ref);
    ArrayModel m;
    m.directions = ps.directions;
    m.phase0.resize(ps.size());
    for (int l = 0; l < ps.size(); ++l) m.phase0(l) = kTwoPi * ps.height_m * std::sin(ps.elevation(l)) / c.wavelength_m;
    m.antennas = ref.kind == ArrayKind::relay_rx   ? c.N_r
                 : ref.kind == ArrayKind::relay_tx ? c.N_t
                 : ref.kind == ArrayKind::bs       ? c.N_b
                                                   : c.N_u;
    p.arrays.push_back(std::move(m));
  }

  const double sr = std::sqrt(c.sigma2_r);
  const double sb = std::sqrt(c.sigma2_b);
  const double sd = std::sqrt(c.sigma2_d);
  p.ue_amplitude = std::sqrt(c.P_k_w);
  p.relay_amplitude = std::sqrt(c.P_r_w);
  for (int k = 0; k < c.K; ++k) p.sigma_up.push_back(instance.gains.uplink[k] * (p.ue_amplitude / sr));
  p.sigma_rb = instance.gains.relay_bs * (p.relay_amplitude * sr / sb);
  // Received powers are O(SNR) in noise units, which starves the copy blocks.
  // Scale the UE->relay gains by b and the relay->BS gains by a so the two hop
  // copies have equal magnitude and the SINR denominator is O(1); the noises
  // follow so every SINR is unchanged.
  double hop1 = 0.0;
  for (const auto& g : p.sigma_up) hop1 += g.squaredNorm() * c.N_u / c.K;
  const double hop2 = p.sigma_rb.squaredNorm() * c.N_t;
  if (hop1 > 0.0 && hop2 > 0.0) {
    const double b2 = std::sqrt(hop2 / (hop1 * (1.0 + hop2)));
    const double a2 = 1.0 / ((1.0 + hop2) * b2);
    for (auto& g : p.sigma_up) g *= std::sqrt(b2);
    p.sigma_rb *= std::sqrt(a2);
    p.s2_r = b2;
    p.s2_b = a2 * b2;
  }
  p.sigma_d2d.assign(c.K, std::vector<CVector>(c.K));
  for (int k = 0; k < c.K; ++k)
    for (int kp = 0; kp < c.K; ++kp) p.sigma_d2d[k][kp] = instance.gains.d2d[k][kp] * (p.ue_amplitude / sd);
  // Same for D2D, per receiver, so each SINR denominator is O(1).
  p.s2_d.resize(c.K);
  for (int k = 0; k < c.K; ++k) {
    double denom = 1.0;
    for (int kp = 0; kp < c.K; ++kp)
      if (kp != k) denom += p.sigma_d2d[k][kp].squaredNorm() * c.N_u;
    for (auto& g : p.sigma_d2d[k]) g /= std::sqrt(denom);
    p.s2_d(k) = 1.0 / denom;
  }

  p.time_unit_s = c.L_a_bits / c.bandwidth_hz;
  p.up_coef = 1.0;
  p.d2d_coef = c.alpha_comp;
  p.edge_coef = (c.L_a_bits / c.F_E_bps) / p.time_unit_s;
  p.local_coef = (c.L_a_bits / c.F_local_bps) / p.time_unit_s;
  return p;
}

Primal to_solver_units(const PddProblem& problem, const MAPositions& positions, const Beamformers& beams,
                       double rho) {
  Primal x;
  for (int a = 0; a < problem.array_count(); ++a) x.positions.push_back(positions.array(a) / problem.wavelength_m);
  for (const auto& w : beams.w) x.w.push_back(w / problem.ue_amplitude);
  for (const auto& w : beams.w_d2d) x.w_d2d.push_back(w / problem.ue_amplitude);
  x.F = beams.F / problem.relay_amplitude;
  x.Q = beams.Q;
  x.rho = rho;
  return x;
}

MAPositions positions_to_meters(const PddProblem& problem, const std::vector<Coords>& positions) {
  MAPositions m;
  m.region_half_side = problem.region_half * problem.wavelength_m;
  m.ue_uplink.resize(problem.K);
  m.d2d_rx.resize(problem.K);
  m.d2d_tx.resize(problem.K);
  for (int a = 0; a < problem.array_count(); ++a) m.array(a) = positions[a] * problem.wavelength_m;
  return m;
}

Beamformers beams_to_physical(const PddProblem& problem, const Primal& x) {
  Beamformers b;
  for (const auto& w : x.w) b.w.push_back(w * problem.ue_amplitude);
  for (const auto& w : x.w_d2d) b.w_d2d.push_back(w * problem.ue_amplitude);
  b.F = x.F * problem.relay_amplitude;
  b.Q = x.Q;
  return b;
}

RateSet primal_rates(const PddProblem& p, const Primal& x) {
  std::vector<CMatrix> A(p.array_count());
  for (int a = 0; a < p.array_count(); ++a) A[a] = p.arrays[a].response(x.positions[a]);
  ChannelSet ch;
  for (int k = 0; k < p.K; ++k) ch.H.push_back(A[p.relay_rx()].adjoint() * p.sigma_up[k].asDiagonal() * A[p.ue(k)]);
  ch.G = A[p.bs()].adjoint() * p.sigma_rb.asDiagonal() * A[p.relay_tx()];
  ch.H_d2d.assign(p.K, std::vector<CMatrix>(p.K));
  for (int k = 0; k < p.K; ++k)
    for (int kp = 0; kp < p.K; ++kp)
      ch.H_d2d[k][kp] = A[p.d2d_rx(k)].adjoint() * p.sigma_d2d[k][kp].asDiagonal() * A[p.d2d_tx(kp)];
  Beamformers b{x.w, x.w_d2d, x.F, x.Q};
  RateSet r;
  r.uplink.resize(p.K);
  r.d2d.resize(p.K);
  for (int k = 0; k < p.K; ++k) {
    r.uplink(k) = uplink_rate(k, ch, b, p.s2_r, p.s2_b);
    r.d2d(k) = d2d_rate(k, ch, b, p.s2_d(k));
  }
  return r;
}

OffloadCoefficients primal_offload(const PddProblem& p, const RateSet& rates) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  OffloadCoefficients c;
  for (int k = 0; k < p.K; ++k) {
    c.uplink += p.up_coef == 0.0 ? 0.0 : rates.uplink(k) > 0 ? p.up_coef / rates.uplink(k) : inf;
    c.d2d += p.d2d_coef == 0.0 ? 0.0 : rates.d2d(k) > 0 ? p.d2d_coef / rates.d2d(k) : inf;
  }
  c.uplink *= p.time_unit_s;
  c.d2d *= p.time_unit_s;
  c.edge = p.edge_coef * p.time_unit_s;
  c.local = p.local_coef * p.time_unit_s;
  return c;
}

}  // namespace marelay::pdd
