#include "marelay/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace marelay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_index(int k, std::size_t K) {
  if (k < 0 || static_cast<std::size_t>(k) >= K) throw std::out_of_range("UE index out of range");
}

double safe_ratio(double num, double den) {
  if (num <= 0.0) return 0.0;
  return den > 0.0 ? num / den : kInf;
}

// rho * bits / rate with the convention 0 * (anything) = 0.
double transfer_time(double fraction, double bits, double rate_bps) {
  if (fraction == 0.0) return 0.0;
  if (!(rate_bps > 0.0)) return kInf;
  return fraction * bits / rate_bps;
}

CVector random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = {re, im};
  }
  return v / v.norm();
}

}  // namespace

Beamformers init_beamformers(const SystemConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(stream_seed(seed, Stream::beams));
  Beamformers b;
  const double amp = std::sqrt(config.P_k_w);
  for (int k = 0; k < config.K; ++k) b.w.push_back(amp * random_unit(rng, config.N_u));
  for (int k = 0; k < config.K; ++k) b.w_d2d.push_back(amp * random_unit(rng, config.N_u));
  const CVector f = random_unit(rng, config.N_t * config.N_r) * std::sqrt(config.P_r_w);
  b.F = Eigen::Map<const CMatrix>(f.data(), config.N_t, config.N_r);
  b.Q.resize(config.N_b, config.K);
  for (int k = 0; k < config.K; ++k) b.Q.col(k) = random_unit(rng, config.N_b);
  return b;
}

double uplink_sinr(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_r, double sigma2_b) {
  check_index(k, ch.H.size());
  const CRowVector g = beams.Q.col(k).adjoint() * ch.G * beams.F;
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t j = 0; j < ch.H.size(); ++j) {
    const double p = std::norm((g * (ch.H[j] * beams.w[j])).value());
    if (static_cast<int>(j) == k)
      signal = p;
    else
      interference += p;
  }
  const double noise = g.squaredNorm() * sigma2_r + beams.Q.col(k).squaredNorm() * sigma2_b;
  return safe_ratio(signal, interference + noise);
}

double d2d_sinr(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_d) {
  check_index(k, ch.H_d2d.size());
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t j = 0; j < ch.H_d2d.size(); ++j) {
    const double p = (ch.H_d2d[k][j] * beams.w_d2d[j]).squaredNorm();
    if (static_cast<int>(j) == k)
      signal = p;
    else
      interference += p;
  }
  return safe_ratio(signal, interference + sigma2_d);
}

double rate_from_sinr(double sinr) { return std::log2(1.0 + sinr); }

double uplink_rate(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_r, double sigma2_b) {
  return rate_from_sinr(uplink_sinr(k, ch, beams, sigma2_r, sigma2_b));
}

double d2d_rate(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_d) {
  return rate_from_sinr(d2d_sinr(k, ch, beams, sigma2_d));
}

RateSet evaluate_rates(const ChannelSet& ch, const Beamformers& beams, const SystemConfig& config) {
  RateSet r;
  r.uplink.resize(config.K);
  r.d2d.resize(config.K);
  for (int k = 0; k < config.K; ++k) {
    r.uplink(k) = uplink_rate(k, ch, beams, config.sigma2_r, config.sigma2_b);
    r.d2d(k) = d2d_rate(k, ch, beams, config.sigma2_d);
  }
  return r;
}

bool LatencyBreakdown::finite() const { return std::isfinite(T_total); }

LatencyBreakdown latency_components(double rho, std::span<const double> uplink_rates,
                                    std::span<const double> d2d_rates, const SystemConfig& config) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("latency_components: rho outside [0, 1]");
  if (uplink_rates.size() != d2d_rates.size()) throw std::invalid_argument("latency_components: rate count mismatch");
  const auto K = static_cast<Eigen::Index>(uplink_rates.size());
  const double B = config.bandwidth_hz;
  LatencyBreakdown t;
  t.T_u1_k.resize(K);
  t.T_d2_k.resize(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    t.T_u1_k(k) = transfer_time(rho, config.L_a_bits, B * uplink_rates[k]);
    t.T_d2_k(k) = transfer_time(1.0 - rho, config.alpha_comp * config.L_a_bits, B * d2d_rates[k]);
  }
  t.T_u1 = t.T_u1_k.sum();
  t.T_d2 = t.T_d2_k.sum();
  t.T_e1 = rho * config.L_a_bits / config.F_E_bps;
  t.T_c2 = (1.0 - rho) * config.L_a_bits / config.F_local_bps;
  t.T_total = t.T_u1 + std::max(t.T_e1, t.T_d2);
  return t;
}

LatencyBreakdown latency_components(double rho, const RateSet& rates, const SystemConfig& config) {
  return latency_components(rho, std::span<const double>(rates.uplink.data(), rates.uplink.size()),
                            std::span<const double>(rates.d2d.data(), rates.d2d.size()), config);
}

double OffloadCoefficients::total(double rho) const {
  const double up = rho == 0.0 ? 0.0 : rho * uplink;
  const double down = rho == 1.0 ? 0.0 : (1.0 - rho) * d2d;
  return up + std::max(rho * edge, down);
}

double OffloadCoefficients::min_feasible_rho() const {
  if (local <= 0.0) return 0.0;
  if (!std::isfinite(uplink)) return 0.0;
  return local / (uplink + local);
}

OffloadCoefficients offload_coefficients(const RateSet& rates, const SystemConfig& config) {
  const LatencyBreakdown at_one = latency_components(1.0, rates, config);
  const LatencyBreakdown at_zero = latency_components(0.0, rates, config);
  return {at_one.T_u1, at_one.T_e1, at_zero.T_d2, at_zero.T_c2};
}

double optimal_offload_ratio(const OffloadCoefficients& c, bool enforce_local_bound) {
  const double lo = enforce_local_bound ? c.min_feasible_rho() : 0.0;
  std::vector<double> candidates{lo, 1.0};
  const double denom = c.d2d + c.edge;
  if (denom > 0.0 && std::isfinite(denom)) candidates.push_back(std::clamp(c.d2d / denom, lo, 1.0));
  std::sort(candidates.begin(), candidates.end());
  double best = candidates.front();
  double best_t = c.total(best);
  for (double r : candidates) {
    const double t = c.total(r);
    if (t < best_t) {
      best = r;
      best_t = t;
    }
  }
  return best;
}

double FeasibilityReport::min_slack() const {
  double m = kInf;
  for (const auto& e : entries) m = std::min(m, e.slack);
  return m;
}

const ConstraintSlack* FeasibilityReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

void append_geometry_slacks(const MAPositions& positions, double d_min, FeasibilityReport& report) {
  const double h = positions.region_half_side;
  for (int a = 0; a < array_count(positions.K()); ++a) {
    const Coords& c = positions.array(a);
    double region = kInf;
    for (Eigen::Index m = 0; m < c.cols(); ++m)
      region = std::min({region, h - std::abs(c(0, m)), h - std::abs(c(1, m))});
    report.entries.push_back({"region[" + std::to_string(a) + "]", region});
    const double d = min_pairwise_distance(c);
    report.entries.push_back({"spacing[" + std::to_string(a) + "]", std::isfinite(d) ? d - d_min : kInf});
  }
}

FeasibilityReport check_feasibility(const ScenarioInstance& instance, const MAPositions& positions,
                                    const Beamformers& beams, double rho) {
  const SystemConfig& cfg = instance.config;
  FeasibilityReport rep;
  const double r = std::clamp(rho, 0.0, 1.0);
  const Evaluation ev = evaluate(instance, positions, beams, r);
  rep.entries.push_back({"local_time", ev.latency.T_u1 - ev.latency.T_c2});
  for (int k = 0; k < cfg.K; ++k)
    rep.entries.push_back({"uplink_power[" + std::to_string(k) + "]", cfg.P_k_w - beams.w[k].squaredNorm()});
  for (int k = 0; k < cfg.K; ++k)
    rep.entries.push_back({"d2d_power[" + std::to_string(k) + "]", cfg.P_k_w - beams.w_d2d[k].squaredNorm()});
  rep.entries.push_back({"relay_power", cfg.P_r_w - beams.F.squaredNorm()});
  rep.entries.push_back({"rho_lower", rho});
  rep.entries.push_back({"rho_upper", 1.0 - rho});
  append_geometry_slacks(positions, cfg.D_min_m, rep);
  return rep;
}

Evaluation evaluate(const ScenarioInstance& instance, const MAPositions& positions, const Beamformers& beams,
                    double rho) {
  Evaluation ev;
  ev.rates = evaluate_rates(build_channels(instance, positions), beams, instance.config);
  ev.latency = latency_components(rho, ev.rates, instance.config);
  return ev;
}

}  // namespace marelay
