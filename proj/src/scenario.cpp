#include "marelay/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace marelay {

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

namespace {

int grid_dim(int n) { return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid SystemConfig: " + what);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

cplx complex_gaussian(std::mt19937_64& rng, double variance) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

PathSet random_paths(std::mt19937_64& rng, int count, double height) {
  std::uniform_real_distribution<double> angle(0.0, kPi);
  RVector el(count), az(count);
  for (int l = 0; l < count; ++l) {
    el(l) = angle(rng);
    az(l) = angle(rng);
  }
  return PathSet::from_angles(std::move(el), std::move(az), height);
}

CVector random_gains(std::mt19937_64& rng, int count, double power) {
  CVector g(count);
  for (int l = 0; l < count; ++l) g(l) = complex_gaussian(rng, power / count);
  return g;
}

// Distances below 1 m would leave the reference-distance model.
constexpr double kMinLinkDistance = 1.0;

}  // namespace

int SystemConfig::max_antennas() const { return std::max({N_u, N_r, N_t, N_b}); }

void SystemConfig::validate() const {
  require(K >= 1 && N_u >= 1 && N_r >= 1 && N_t >= 1 && N_b >= 1, "antenna and pair counts must be >= 1");
  require(L >= 1 && L_tilde >= 1 && L_bar >= 1, "path counts must be >= 1");
  require(L_a_bits > 0 && F_local_bps > 0 && F_E_bps > 0 && bandwidth_hz > 0, "task size and rates must be > 0");
  require(alpha_comp >= 0 && alpha_comp <= 1, "alpha_comp must lie in [0, 1]");
  require(P_k_w > 0 && P_r_w > 0, "transmit powers must be > 0");
  require(sigma2_r > 0 && sigma2_b > 0 && sigma2_d > 0, "noise powers must be > 0");
  require(g0 > 0 && path_loss_exp > 0 && wavelength_m > 0, "g0, path_loss_exp and wavelength must be > 0");
  require(D_min_m > 0, "D_min must be > 0");
  require(region_side_m > 0, "region_side must be > 0");
  require(ue_ring_radius_m > 0 && relay_bs_distance_m > 0 && d2d_distance_m > 0, "distances must be > 0");
  require(!ue_distance_m || *ue_distance_m > 0, "ue_distance must be > 0");
  const int n = max_antennas();
  require(region_side_m >= D_min_m * (grid_dim(n) - 1), "region_side too small to place " + std::to_string(n) +
                                                             " antennas at spacing D_min");
}

PathSet PathSet::from_angles(RVector elevation, RVector azimuth, double height_m) {
  PathSet p;
  p.directions.resize(2, azimuth.size());
  for (Eigen::Index l = 0; l < azimuth.size(); ++l) {
    p.directions(0, l) = std::cos(elevation(l)) * std::cos(azimuth(l));
    p.directions(1, l) = std::cos(elevation(l)) * std::sin(azimuth(l));
  }
  p.elevation = std::move(elevation);
  p.azimuth = std::move(azimuth);
  p.height_m = height_m;
  return p;
}

const PathSet& PathGeometry::of(ArrayRef ref) const {
  switch (ref.kind) {
    case ArrayKind::ue_uplink:
      return ue_uplink.at(ref.k);
    case ArrayKind::d2d_rx:
      return d2d_rx.at(ref.k);
    case ArrayKind::d2d_tx:
      return d2d_tx.at(ref.k);
    case ArrayKind::relay_rx:
      return relay_rx;
    case ArrayKind::relay_tx:
      return relay_tx;
    case ArrayKind::bs:
      return bs;
  }
  throw std::logic_error("unknown array kind");
}

std::uint64_t stream_seed(std::uint64_t seed, Stream stream, std::uint64_t sub) {
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(stream) << 48) ^ splitmix64(sub + 1));
}

double large_scale_gain(const SystemConfig& config, double distance_m) {
  return config.g0 * std::pow(std::max(distance_m, kMinLinkDistance), -config.path_loss_exp);
}

ScenarioInstance build_scenario(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  ScenarioInstance inst;
  inst.config = config;
  inst.seed = seed;
  std::mt19937_64 rng(stream_seed(seed, Stream::geometry));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int K = config.K;
  std::vector<Vec2> ue1(K), ue2(K);
  inst.ue_distances.resize(K);
  for (int k = 0; k < K; ++k) {
    // 1 - U maps [0, 1) onto (0, 1].
    const double r = config.ue_distance_m ? *config.ue_distance_m : config.ue_ring_radius_m * (1.0 - unit(rng));
    const double theta = kTwoPi * unit(rng);
    const double psi = kTwoPi * unit(rng);
    ue1[k] = r * Vec2(std::cos(theta), std::sin(theta));
    ue2[k] = ue1[k] + config.d2d_distance_m * Vec2(std::cos(psi), std::sin(psi));
    inst.ue_distances(k) = r;
  }
  inst.d2d_distances.resize(K, K);
  for (int k = 0; k < K; ++k)
    for (int kp = 0; kp < K; ++kp) inst.d2d_distances(k, kp) = (ue2[k] - ue1[kp]).norm();

  PathGeometry& g = inst.geometry;
  for (int k = 0; k < K; ++k) g.ue_uplink.push_back(random_paths(rng, config.L, 0.0));
  g.relay_rx = random_paths(rng, config.L, config.h_r_m);
  g.relay_tx = random_paths(rng, config.L_tilde, config.h_r_m);
  g.bs = random_paths(rng, config.L_tilde, config.h_b_m);
  for (int k = 0; k < K; ++k) g.d2d_tx.push_back(random_paths(rng, config.L_bar, 0.0));
  for (int k = 0; k < K; ++k) g.d2d_rx.push_back(random_paths(rng, config.L_bar, 0.0));

  PathGains& gains = inst.gains;
  for (int k = 0; k < K; ++k)
    gains.uplink.push_back(random_gains(rng, config.L, large_scale_gain(config, inst.ue_distances(k))));
  gains.relay_bs = random_gains(rng, config.L_tilde, large_scale_gain(config, config.relay_bs_distance_m));
  gains.d2d.assign(K, std::vector<CVector>(K));
  for (int k = 0; k < K; ++k)
    for (int kp = 0; kp < K; ++kp)
      gains.d2d[k][kp] = random_gains(rng, config.L_bar, large_scale_gain(config, inst.d2d_distances(k, kp)));
  return inst;
}

Coords grid_positions(int n, double side, double d_min, std::uint64_t rng_seed) {
  Coords c(2, n);
  if (n == 1) {
    c.setZero();
    return c;
  }
  const int g = grid_dim(n);
  // Margin m equalizes the edge clearance with half the spare spacing; jitter uses half of it.
  const double margin = std::max(0.0, (side - d_min * (g - 1)) / (2.0 * g));
  const double spacing = (side - 2.0 * margin) / (g - 1);
  const double jitter = 0.5 * std::min(margin, 0.5 * (spacing - d_min));
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const int row = i / g;
    const int col = i % g;
    const double jx = jitter > 0 ? jitter * u(rng) : 0.0;
    const double jy = jitter > 0 ? jitter * u(rng) : 0.0;
    c(0, i) = -0.5 * side + margin + col * spacing + jx;
    c(1, i) = -0.5 * side + margin + row * spacing + jy;
  }
  return c;
}

MAPositions init_positions(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  MAPositions p;
  p.region_half_side = 0.5 * config.region_side_m;
  const int K = config.K;
  p.ue_uplink.resize(K);
  p.d2d_rx.resize(K);
  p.d2d_tx.resize(K);
  for (int a = 0; a < array_count(K); ++a) {
    const ArrayRef ref = array_ref(a, K);
    int n = config.N_u;
    if (ref.kind == ArrayKind::relay_rx) n = config.N_r;
    if (ref.kind == ArrayKind::relay_tx) n = config.N_t;
    if (ref.kind == ArrayKind::bs) n = config.N_b;
    p.array(a) = grid_positions(n, config.region_side_m, config.D_min_m,
                                stream_seed(seed, Stream::positions, static_cast<std::uint64_t>(a)));
  }
  return p;
}

int array_index(ArrayRef ref, int K) {
  switch (ref.kind) {
    case ArrayKind::ue_uplink:
      return ref.k;
    case ArrayKind::d2d_rx:
      return K + ref.k;
    case ArrayKind::d2d_tx:
      return 2 * K + ref.k;
    case ArrayKind::relay_rx:
      return 3 * K;
    case ArrayKind::relay_tx:
      return 3 * K + 1;
    case ArrayKind::bs:
      return 3 * K + 2;
  }
  throw std::logic_error("unknown array kind");
}

ArrayRef array_ref(int index, int K) {
  if (index < K) return {ArrayKind::ue_uplink, index};
  if (index < 2 * K) return {ArrayKind::d2d_rx, index - K};
  if (index < 3 * K) return {ArrayKind::d2d_tx, index - 2 * K};
  if (index == 3 * K) return {ArrayKind::relay_rx, 0};
  if (index == 3 * K + 1) return {ArrayKind::relay_tx, 0};
  if (index == 3 * K + 2) return {ArrayKind::bs, 0};
  throw std::out_of_range("array index out of range");
}

Coords& MAPositions::array(int index) {
  return const_cast<Coords&>(static_cast<const MAPositions&>(*this).array(index));
}

const Coords& MAPositions::array(int index) const {
  const ArrayRef ref = array_ref(index, K());
  switch (ref.kind) {
    case ArrayKind::ue_uplink:
      return ue_uplink[ref.k];
    case ArrayKind::d2d_rx:
      return d2d_rx[ref.k];
    case ArrayKind::d2d_tx:
      return d2d_tx[ref.k];
    case ArrayKind::relay_rx:
      return relay_rx;
    case ArrayKind::relay_tx:
      return relay_tx;
    case ArrayKind::bs:
      return bs;
  }
  throw std::logic_error("unknown array kind");
}

std::vector<std::pair<int, int>> antenna_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
  return out;
}

double min_pairwise_distance(const Coords& c) {
  double m = std::numeric_limits<double>::infinity();
  for (auto [a, b] : antenna_pairs(static_cast<int>(c.cols()))) m = std::min(m, (c.col(a) - c.col(b)).norm());
  return m;
}

}  // namespace marelay
