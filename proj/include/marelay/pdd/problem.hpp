#pragma once

#include <optional>
#include <vector>

#include "marelay/positions.hpp"
#include "marelay/scenario.hpp"
#include "marelay/system.hpp"
#include "marelay/types.hpp"

namespace marelay::pdd {

/// Path data of one antenna array in wavelength units:
/// phase_l(v) = 2pi directions_l . v + phase0_l.
struct ArrayModel {
  Eigen::Matrix2Xd directions;
  RVector phase0;
  int antennas = 0;

  int paths() const { return static_cast<int>(phase0.size()); }
  CMatrix response(const Coords& v) const;
  RVector phases(const Vec2& v) const;
};

/// Structural switches used by the baselines.
struct ModelSwitches {
  bool positions_frozen = false;
  std::optional<double> fixed_rho;
  /// Enforce uplink time >= local compute time.
  bool enforce_local_time = true;
};

/// Scaled problem the solver works on. Positions are in wavelengths, time in
/// units of time_unit_s, and beams are divided by the square root of their
/// power budgets, with the budgets and noises absorbed into the path gains.
/// Block code only relies on the generic fields, so hand-built problems may
/// keep physical powers and noises.
struct PddProblem {
  int K = 0;
  int N_u = 0, N_r = 0, N_t = 0, N_b = 0;
  std::vector<ArrayModel> arrays;  ///< flat array order
  std::vector<CVector> sigma_up;
  CVector sigma_rb;
  std::vector<std::vector<CVector>> sigma_d2d;  ///< [rx k][tx k']

  double P_ue = 1.0;
  double P_relay = 1.0;
  double s2_r = 1.0;
  double s2_b = 1.0;
  RVector s2_d;  ///< per D2D receiver

  /// Latency coefficients: t_uk >= up * rho / C_k, t_dk >= d2d * (1 - rho) / C~_k,
  /// t_d >= edge * rho, sum_k t_ck >= local * (1 - rho) with t_ck <= t_uk.
  double up_coef = 1.0;
  double d2d_coef = 1.0;
  double edge_coef = 1.0;
  double local_coef = 1.0;

  double region_half = 1.0;  ///< wavelengths
  double d_min = 0.5;        ///< wavelengths

  ModelSwitches switches;

  double time_unit_s = 1.0;
  double wavelength_m = 1.0;
  double ue_amplitude = 1.0;     ///< sqrt of physical P_k
  double relay_amplitude = 1.0;  ///< sqrt of physical P_r

  int ue(int k) const { return k; }
  int d2d_rx(int k) const { return K + k; }
  int d2d_tx(int k) const { return 2 * K + k; }
  int relay_rx() const { return 3 * K; }
  int relay_tx() const { return 3 * K + 1; }
  int bs() const { return 3 * K + 2; }
  int array_count() const { return 3 * K + 3; }
};

PddProblem make_problem(const ScenarioInstance& instance, ModelSwitches switches = {});

/// Primal design in solver units.
struct Primal {
  std::vector<Coords> positions;  ///< flat array order, wavelengths
  std::vector<CVector> w;
  std::vector<CVector> w_d2d;
  CMatrix F;
  CMatrix Q;
  double rho = 0.5;
};

Primal to_solver_units(const PddProblem& problem, const MAPositions& positions, const Beamformers& beams,
                       double rho);
MAPositions positions_to_meters(const PddProblem& problem, const std::vector<Coords>& positions);
Beamformers beams_to_physical(const PddProblem& problem, const Primal& x);

/// Rates of a primal design under the solver's gains (equal to physical rates).
RateSet primal_rates(const PddProblem& problem, const Primal& x);
/// Latency coefficients in seconds for given rates.
OffloadCoefficients primal_offload(const PddProblem& problem, const RateSet& rates);

}  // namespace marelay::pdd
