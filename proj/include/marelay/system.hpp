#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "marelay/channel.hpp"
#include "marelay/scenario.hpp"
#include "marelay/types.hpp"

namespace marelay {

struct Beamformers {
  std::vector<CVector> w;      ///< uplink transmit, N_u each
  std::vector<CVector> w_d2d;  ///< D2D transmit, N_u each
  CMatrix F;                   ///< relay amplify-and-forward, N_t x N_r
  CMatrix Q;                   ///< BS combiners as columns, N_b x K
};

/// Random feasible start: UE beams at full power, ||F||_F^2 = P_r, unit-norm combiners.
Beamformers init_beamformers(const SystemConfig& config, std::uint64_t seed);

/// Throws std::out_of_range for k outside [0, K).
double uplink_sinr(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_r, double sigma2_b);
double d2d_sinr(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_d);
/// log2(1 + sinr), in bits/s/Hz.
double rate_from_sinr(double sinr);
double uplink_rate(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_r, double sigma2_b);
double d2d_rate(int k, const ChannelSet& ch, const Beamformers& beams, double sigma2_d);

struct RateSet {
  RVector uplink;
  RVector d2d;
};
RateSet evaluate_rates(const ChannelSet& ch, const Beamformers& beams, const SystemConfig& config);

/// Seconds. A zero rate on a link carrying traffic yields +infinity.
struct LatencyBreakdown {
  double T_u1 = 0.0;
  double T_e1 = 0.0;
  double T_c2 = 0.0;
  double T_d2 = 0.0;
  double T_total = 0.0;
  RVector T_u1_k;
  RVector T_d2_k;

  bool finite() const;
};

/// Rates in bits/s/Hz; bandwidth_hz converts them to bits/s.
LatencyBreakdown latency_components(double rho, std::span<const double> uplink_rates,
                                    std::span<const double> d2d_rates, const SystemConfig& config);
LatencyBreakdown latency_components(double rho, const RateSet& rates, const SystemConfig& config);

/// Latency as a piecewise-linear function of rho for fixed rates:
/// T(rho) = rho*uplink + max(rho*edge, (1-rho)*d2d); local bounds (1-rho)*local <= rho*uplink.
struct OffloadCoefficients {
  double uplink = 0.0;
  double edge = 0.0;
  double d2d = 0.0;
  double local = 0.0;

  double total(double rho) const;
  /// Smallest rho with rho*uplink >= (1-rho)*local.
  double min_feasible_rho() const;
};
OffloadCoefficients offload_coefficients(const RateSet& rates, const SystemConfig& config);

/// Exact minimizer of total() over [min_feasible_rho, 1] (over [0, 1] when
/// enforce_local_bound is false). Ties resolve to the smaller rho.
double optimal_offload_ratio(const OffloadCoefficients& c, bool enforce_local_bound = true);

struct ConstraintSlack {
  std::string name;
  double slack = 0.0;
};

struct FeasibilityReport {
  std::vector<ConstraintSlack> entries;

  double min_slack() const;
  bool feasible(double tolerance) const { return min_slack() >= -tolerance; }
  const ConstraintSlack* find(const std::string& name) const;
};

/// Signed slack of every constraint of the latency problem. Slack names:
/// local_time, uplink_power[k], d2d_power[k], relay_power, rho_lower, rho_upper,
/// region[a], spacing[a] with a the flat array index.
FeasibilityReport check_feasibility(const ScenarioInstance& instance, const MAPositions& positions,
                                    const Beamformers& beams, double rho);

/// Region and spacing slacks only; usable without channels.
void append_geometry_slacks(const MAPositions& positions, double d_min, FeasibilityReport& report);

struct Evaluation {
  RateSet rates;
  LatencyBreakdown latency;
};
Evaluation evaluate(const ScenarioInstance& instance, const MAPositions& positions, const Beamformers& beams,
                    double rho);

}  // namespace marelay
