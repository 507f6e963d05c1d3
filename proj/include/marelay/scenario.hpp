#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "marelay/positions.hpp"
#include "marelay/types.hpp"

namespace marelay {

double dbm_to_watts(double p_dbm);

/// Physical and geometric constants of one system. Defaults describe the
/// reference scenario except bandwidth_hz, which defaults to 1 so rates
/// divide bit counts directly.
struct SystemConfig {
  int K = 4;
  int N_u = 2;
  int N_r = 4;
  int N_t = 4;
  int N_b = 8;
  int L = 2;        ///< uplink paths per UE
  int L_tilde = 8;  ///< relay-to-BS paths
  int L_bar = 2;    ///< D2D paths per link

  double L_a_bits = 1e7;
  double F_local_bps = 4e6;
  double F_E_bps = 1e8;
  double alpha_comp = 0.5;
  double bandwidth_hz = 1.0;

  double P_k_w = 0.031622776601683791;  // 15 dBm
  double P_r_w = 1.0;                   // 30 dBm
  double sigma2_r = 1e-8;
  double sigma2_b = 1e-8;
  double sigma2_d = 1e-8;

  double g0 = 1.0;
  double path_loss_exp = 2.2;
  double wavelength_m = 0.05;
  double region_side_m = 0.15;
  double D_min_m = 0.025;
  double h_r_m = 10.0;
  double h_b_m = 25.0;

  double ue_ring_radius_m = 60.0;
  double jammer_ring_radius_m = 30.0;  ///< parsed for completeness; no jammer term in the model
  double relay_bs_distance_m = 50.0;
  double d2d_distance_m = 10.0;
  /// Pins every UE1-relay distance instead of sampling it.
  std::optional<double> ue_distance_m;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
  int max_antennas() const;
};

/// Paths of one array: directions are the projected unit vectors, one column per path.
struct PathSet {
  RVector elevation;
  RVector azimuth;
  Eigen::Matrix2Xd directions;
  double height_m = 0.0;

  int size() const { return static_cast<int>(azimuth.size()); }
  static PathSet from_angles(RVector elevation, RVector azimuth, double height_m);
};

struct PathGeometry {
  std::vector<PathSet> ue_uplink;  ///< L departure paths per UE1
  std::vector<PathSet> d2d_rx;     ///< L_bar arrival paths per UE2
  std::vector<PathSet> d2d_tx;     ///< L_bar departure paths per UE1
  PathSet relay_rx;                ///< L arrival paths, shared by all UEs
  PathSet relay_tx;                ///< L_tilde departure paths
  PathSet bs;                      ///< L_tilde arrival paths

  const PathSet& of(ArrayRef ref) const;
};

/// Diagonals of the path-response matrices.
struct PathGains {
  std::vector<CVector> uplink;               ///< Sigma_k, length L
  CVector relay_bs;                          ///< Sigma-tilde, length L_tilde
  std::vector<std::vector<CVector>> d2d;     ///< [rx k][tx k'], length L_bar
};

struct ScenarioInstance {
  SystemConfig config;
  PathGeometry geometry;
  PathGains gains;
  RVector ue_distances;         ///< UE1_k to relay
  RMatrix d2d_distances;        ///< (rx k, tx k'): UE2_k to UE1_k'
  std::uint64_t seed = 0;
};

/// Large-scale power gain g0 * d^-exponent.
double large_scale_gain(const SystemConfig& config, double distance_m);

ScenarioInstance build_scenario(const SystemConfig& config, std::uint64_t seed);

/// Jittered grid placement satisfying the region and spacing constraints.
MAPositions init_positions(const SystemConfig& config, std::uint64_t seed);

/// Grid for one n-antenna array; jitter draws come from rng_seed.
Coords grid_positions(int n, double side, double d_min, std::uint64_t rng_seed);

/// Independent RNG streams derived from one user seed.
enum class Stream : std::uint64_t { geometry = 1, positions = 2, beams = 3 };
std::uint64_t stream_seed(std::uint64_t seed, Stream stream, std::uint64_t sub = 0);

}  // namespace marelay
